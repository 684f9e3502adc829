#include "ergolab/cli/corpus.hpp"

#include <algorithm>

#include "ergolab/rng.hpp"

namespace ergolab::cli {

std::vector<CorpusPair> corpus_pairs(double alpha, double beta) {
  const SystemSpec rot = SystemSpec::rotation(alpha);
  const SystemSpec rot_g = SystemSpec::rotation(beta);
  const SystemSpec dbl = SystemSpec::doubling();
  const std::string cos1 = "0.5*e(1)+0.5*e(-1)";
  return {
      {"rotation-character", rot, "e(1)", rot_g, "e(1)"},
      {"rotation-polynomial", rot, "0.5*e(1)+0.5*e(2)", dbl, cos1},
      {"doubling-cosine", dbl, cos1, rot_g, "e(1)"},
      {"doubling-mean", dbl, "0.5+0.25*e(1)+0.25*e(-3)", rot_g, "e(1)"},
      {"skew-anzai-mixed", SystemSpec::skew_anzai(alpha), "0.5*e(1,0)+0.5*e(0,1)", rot_g, "e(1)"},
      {"skew-sqrt-fiber", SystemSpec::skew_sqrt(alpha), "0.5*e(0,1)+0.5*e(1,1)", rot_g, cos1},
      {"rotation-x-doubling", SystemSpec::product({rot, dbl}), "0.5*e(1,0)+0.5*e(0,1)", rot_g, "e(1)"},
      {"constant", rot, "1", rot_g, "1"},
  };
}

Observable random_trig_polynomial(std::size_t dim, std::uint64_t seed, std::uint64_t index, std::size_t max_terms,
                                  std::int64_t max_frequency, double coefficient_bound) {
  const CounterRng rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * max_frequency + 1);
  // The frequency box holds span^dim distinct terms.
  std::uint64_t box = 1;
  for (std::size_t i = 0; i < dim && box < max_terms; ++i) box *= span;
  const std::size_t terms = std::min<std::size_t>(1 + rng.bits(index, 0) % max_terms, box);
  CoefficientMap coeffs;
  std::uint64_t counter = 1;
  while (coeffs.size() < terms) {
    Frequency m(dim);
    for (auto& mi : m) mi = static_cast<std::int64_t>(rng.bits(index, counter++) % span) - max_frequency;
    const double c = coefficient_bound * (2.0 * rng.uniform(index, counter++) - 1.0);
    if (c != 0.0) coeffs.emplace(std::move(m), c);
  }
  return Observable(dim, std::move(coeffs));
}

}  // namespace ergolab::cli

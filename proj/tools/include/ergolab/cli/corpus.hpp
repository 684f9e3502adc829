#pragma once

// Fixed (f, g) pairs exercised by the bound experiments, and seeded random
// trigonometric polynomials.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/observable.hpp"
#include "ergolab/systems.hpp"

namespace ergolab::cli {

struct CorpusPair {
  std::string name;
  SystemSpec f_system;
  std::string f_observable;
  SystemSpec g_system;
  std::string g_observable;
};

/// Every g has sup_norm_bound <= 1 and every f-system has Kronecker and A_2
/// projections.
std::vector<CorpusPair> corpus_pairs(double alpha, double beta);

/// 1 to max_terms terms with frequencies in [-max_frequency, max_frequency]^dim
/// and real coefficients uniform in [-coefficient_bound, coefficient_bound].
/// A pure function of (seed, index).
Observable random_trig_polynomial(std::size_t dim, std::uint64_t seed, std::uint64_t index,
                                  std::size_t max_terms = 8, std::int64_t max_frequency = 8,
                                  double coefficient_bound = 2.0);

}  // namespace ergolab::cli

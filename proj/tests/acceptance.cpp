// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ergolab/bounds.hpp"
#include "ergolab/cli/config.hpp"
#include "ergolab/cli/corpus.hpp"
#include "ergolab/cli/experiments.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/seminorms.hpp"

using namespace ergolab;

namespace {

constexpr double kAlpha = cli::kGoldenAlpha;
constexpr double kBeta = cli::kSilverBeta;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  /// Wall-clock limit in seconds; 0 for none.
  double time_limit;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

DynamicalSystem rotation(double a) { return make_system(SystemSpec::rotation(a)); }
DynamicalSystem doubling() { return make_system(SystemSpec::doubling()); }

Outcome rotation_l4() {
  const auto rot = rotation(kAlpha);
  const auto x0 = default_start(rot);
  const double a = hk_seminorm(rot, parse_observable("e(1)"), 2, 512, 1 << 16, x0).value;
  const double b = hk_seminorm(rot, parse_observable("e(1)+e(2)"), 2, 512, 1 << 16, x0).value;
  const bool ok = std::abs(a - 1.0) <= 0.05 && std::abs(b - std::pow(2.0, 0.25)) <= 0.05;
  return {ok, fmt("e1: %.6f (1 +- 0.05), e1+e2: %.6f (%.6f +- 0.05)", a, b, std::pow(2.0, 0.25))};
}

Outcome weak_mixing() {
  const auto dbl = doubling();
  const Observable c = Observable::cosine(1);
  const double hk = hk_seminorm(dbl, c, 2, 256, 1 << 18, default_start(dbl)).value;
  const double n1 = n_seminorm(dbl, c, 1, 256, 1 << 18).value;
  return {hk <= 0.05 && n1 <= 0.05, fmt("hk k=2: %.6f, N_1: %.6f (<= 0.05)", hk, n1)};
}

Outcome vdc_soundness() {
  const std::size_t N = 4096, trials = 1000;
  const FrequencyGrid grid = FrequencyGrid::for_length(N);
  std::size_t total = 0, held = 0;
  for (std::size_t H : {16u, 64u, 256u}) {
    const auto ok = parallel_map(trials, [&](std::size_t t) {
      const CounterRng rng(H);
      std::vector<Complex> a(N);
      for (std::size_t n = 0; n < N; ++n) a[n] = rng.sign(t, n);
      const auto r = vdc_bound(a, N, H, grid);
      return r.lhs <= r.rhs ? 1 : 0;
    });
    for (int v : ok) held += static_cast<std::size_t>(v);
    total += trials;
  }
  return {held == total, fmt("%.0f of %.0f reports with lhs <= rhs", double(held), double(total))};
}

Outcome alias() {
  const auto rot = rotation(kAlpha);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Observable f = cli::random_trig_polynomial(1, 1, i);
    const double n1 = n_seminorm(rot, f, 1, 256, 4096, std::nullopt, PathPolicy::ExactOnly).value;
    const double hk = hk_seminorm(rot, f, 2, 256, 4096, default_start(rot), PathPolicy::ExactOnly).value;
    worst = std::max(worst, std::abs(n1 - hk));
  }
  return {worst <= 1e-12, fmt("max |N_1 - hk_2| = %.3g over 20 polynomials (<= 1e-12)", worst)};
}

Outcome spectral_identity() {
  double worst_rel = 0.0, worst_mc = 0.0;
  const std::vector<std::pair<long, long>> chars{{1, 1}, {2, -3}, {-1, 5}};
  for (const auto& [p, q] : chars)
    for (std::size_t N : {64u, 1000u, 4096u}) {
      const auto rf = rotation(kAlpha), rg = rotation(kBeta);
      const Observable f = Observable::character({p}), g = Observable::character({q});
      const auto fs = sample_observable(rf, f, Point({0.0}), N);
      const double spectral =
          quadratic_rt_functional(fs, rg, g, N, SpectralMode{exact_spectral_coefficients(rg, g, N - 1)});
      const double direct = quadratic_rt_at(fs, rg, g, Point({0.37}), N);
      const double mc = quadratic_rt_functional(fs, rg, g, N, MonteCarloMode{400, 11});
      worst_rel = std::max(worst_rel, std::abs(spectral - direct) / std::max(direct, 1e-300));
      worst_mc = std::max(worst_mc, std::abs(mc - spectral));
    }
  const double mc_tol = 3.0 / std::sqrt(400.0);
  return {worst_rel <= 1e-9 && worst_mc <= mc_tol,
          fmt("spectral vs direct rel err %.3g (<= 1e-9), MC gap %.3g (<= %.3g)", worst_rel, worst_mc, mc_tol)};
}

Outcome two_term() {
  const auto dbl = doubling();
  const StackEntry f{dbl, Observable::cosine(1), random_point(dbl, 1, 0)};
  const auto r = check_upbound0(f, {rotation(kBeta), Observable::character({1})}, 1 << 16, 100, 1);
  return {r.rhs == 0.0 && r.lhs <= 0.02, fmt("rhs %.3g, max over 100 starts %.6f (<= 0.02)", r.rhs, r.lhs)};
}

Outcome upbound_k1() {
  std::size_t checked = 0, held = 0;
  double worst = -INFINITY;
  for (const auto& pair : cli::corpus_pairs(kAlpha, kBeta)) {
    const auto fsys = make_system(pair.f_system), gsys = make_system(pair.g_system);
    if (!projection_available(fsys, distal_factor(fsys, 1))) continue;
    const std::vector<StackEntry> stack{
        {fsys, parse_observable(pair.f_observable, fsys.dimension()), default_start(fsys)},
        {gsys, parse_observable(pair.g_observable, gsys.dimension()), random_point(gsys, 1, 0)}};
    const auto r = check_upbound_k(stack, 1, 256, 1 << 16, FrequencyGrid::for_length(1 << 16));
    ++checked;
    if (r.lhs <= r.rhs + 0.02) ++held;
    worst = std::max(worst, r.lhs - r.rhs);
  }
  return {checked > 0 && held == checked,
          fmt("%.0f of %.0f corpus pairs with lhs <= rhs + 0.02, max lhs - rhs %.3g", double(held), double(checked),
              worst)};
}

Outcome gap() {
  double worst = 0.0;
  for (std::size_t m : {1u, 16u, 10000u}) {
    const double expect = std::pow(double(m), 0.25);
    worst = std::max(worst, std::abs(l4_l2_gap_demo(m).ratio - expect));
  }
  return {worst <= 1e-12, fmt("max |ratio - m^{1/4}| = %.3g (<= 1e-12)", worst)};
}

Outcome ww_rt_decay() {
  const auto dbl = doubling();
  const StackEntry f{dbl, Observable::cosine(1), random_point(dbl, 1, 0)};
  const ObservableOn g{rotation(kBeta), Observable::character({1})};
  std::vector<double> lhs;
  for (std::size_t e = 12; e <= 16; ++e) {
    const std::size_t N = std::size_t{1} << e;
    lhs.push_back(check_ww_rt_bound(f, g, N, FrequencyGrid::for_length(N), 100, 1).lhs);
  }
  bool ok = true, strict = true;
  for (std::size_t i = 1; i < lhs.size(); ++i) {
    ok = ok && lhs[i] < lhs[i - 1] + 0.02;
    strict = strict && lhs[i] < lhs[i - 1];
  }
  return {ok, fmt("lhs %.3g at 2^12 to %.3g at 2^16, each step < prev + 0.02, strictly decreasing: ", lhs.front(),
                  lhs.back()) +
                  (strict ? "yes" : "no")};
}

Outcome rt_cauchy() {
  const std::size_t N = 1 << 18, instances = 8;
  const std::vector<std::pair<DynamicalSystem, Observable>> parts{
      {rotation(kAlpha), Observable::character({1})}, {doubling(), Observable::cosine(1)},
      {rotation(kBeta), Observable::character({1})}};
  double worst = 0.0;
  for (std::size_t i = 0; i < instances; ++i) {
    std::vector<StackEntry> stack;
    for (std::size_t j = 0; j < parts.size(); ++j)
      stack.push_back({parts[j].first, parts[j].second, random_point(parts[j].first, 1, 3 * i + j)});
    worst = std::max(worst, std::abs(return_times_average(stack, N) - return_times_average(stack, N / 2)));
  }
  return {worst <= 0.02, fmt("max |avg(2^18) - avg(2^17)| = %.3g over 8 instances (<= 0.02)", worst)};
}

Outcome invariants() {
  std::vector<std::string> broken;
  // Homogeneity.
  const auto anzai = make_system(SystemSpec::skew_anzai(kAlpha));
  const Observable f = parse_observable("0.5*e(1,1)+0.3*e(0,1)-0.2i*e(2,0)");
  const Complex c(-1.5, 2.0);
  for (int k : {2, 3}) {
    const double hk = hk_seminorm(anzai, f, k, 16, 1024, default_start(anzai)).value;
    const double hkc = hk_seminorm(anzai, f.scaled(c), k, 16, 1024, default_start(anzai)).value;
    const double nk = n_seminorm(anzai, f, k, 16, 1024).value;
    const double nkc = n_seminorm(anzai, f.scaled(c), k, 16, 1024).value;
    if (std::abs(hkc - std::abs(c) * hk) > 1e-12 * std::max(1.0, hkc)) broken.push_back("hk homogeneity");
    if (std::abs(nkc - std::abs(c) * nk) > 1e-12 * std::max(1.0, nkc)) broken.push_back("N_k homogeneity");
  }
  // Projection idempotence and linearity.
  const auto mixed = make_system(SystemSpec::product({SystemSpec::rotation(kAlpha), SystemSpec::doubling()}));
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Observable a = cli::random_trig_polynomial(2, 21, i), b = cli::random_trig_polynomial(2, 22, i);
    for (FactorTag tag : {FactorTag::Trivial, FactorTag::Kronecker, FactorTag::FullAlgebra}) {
      const Observable pa = conditional_expectation(mixed, a, tag);
      if (!(conditional_expectation(mixed, pa, tag) == pa)) broken.push_back("idempotence");
      if (!(conditional_expectation(mixed, a.scaled(c) + b, tag) ==
            pa.scaled(c) + conditional_expectation(mixed, b, tag)))
        broken.push_back("linearity");
    }
  }
  // Grid monotonicity: the M grid is contained in the 2M grid.
  const auto dbl = doubling();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto series = sample_observable(dbl, Observable::cosine(1), random_point(dbl, 4, s), 2048);
    double prev = 0.0;
    for (std::size_t M : {1024u, 2048u, 4096u, 8192u, 16384u}) {
      const double v = wiener_wintner_sup(series, 2048, FrequencyGrid(M)).value;
      if (v < prev) broken.push_back("grid monotonicity");
      prev = v;
    }
  }
  // CSV bytes under a fixed seed, across runs and thread caps.
  cli::ExperimentConfig cfg = cli::make_experiment_config({{"experiment", "upbound0"}, {"N", "8192"}, {"seed", "5"}});
  set_max_threads(1);
  const std::string one = cli::to_csv(cli::run_experiment(cfg).csv());
  set_max_threads(0);
  const std::string again = cli::to_csv(cli::run_experiment(cfg).csv());
  set_max_threads(4);
  const std::string four = cli::to_csv(cli::run_experiment(cfg).csv());
  set_max_threads(0);
  if (one != again || one != four) broken.push_back("CSV reproducibility");
  std::string detail = "homogeneity, idempotence, linearity, grid monotonicity, CSV bytes";
  if (!broken.empty()) detail = "broken: " + broken.front() + " (" + std::to_string(broken.size()) + " violations)";
  return {broken.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "rotation l4 closed form", 30, rotation_l4},
      {2, "weak-mixing vanishing", 60, weak_mixing},
      {3, "Van der Corput soundness", 60, vdc_soundness},
      {4, "N_1 / hk_2 alias", 0, alias},
      {5, "spectral identity", 0, spectral_identity},
      {6, "two-term upper bound", 0, two_term},
      {7, "N_2 bound surrogate at k=1", 0, upbound_k1},
      {8, "l2/l4 gap", 0, gap},
      {9, "WW return-times bound decay", 0, ww_rt_decay},
      {10, "3-term convergence", 0, rt_cauchy},
      {11, "exact invariants", 0, invariants},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    std::string timing = fmt("%.2fs", secs);
    if (c.time_limit > 0) {
      timing += fmt(" (limit %.0fs)", c.time_limit);
      pass = pass && secs < c.time_limit;
    }
    std::printf("%s [%2d] %s: %s; %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
    if (!pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

#include "ergolab/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/seminorms.hpp"
#include "ergolab/summation.hpp"

namespace ergolab {

bool BoundReport::holds(double slack) const {
  if (near_zero_rhs) return lhs <= floor;
  return lhs <= rhs + slack;
}

BoundReport make_report(double lhs, double rhs) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  if (rhs > 0.0)
    r.ratio = lhs / rhs;
  else if (lhs > 0.0)
    r.ratio = std::numeric_limits<double>::infinity();
  r.rhs_zero = rhs == 0.0 && lhs > 0.0;
  r.near_zero_rhs = rhs < kNearZeroRhs;
  return r;
}

namespace {

constexpr double kUnitTolerance = 1e-12;

double mean(const std::vector<double>& v) {
  return pairwise_sum(std::span<const double>(v)) / static_cast<double>(v.size());
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

BoundReport vdc_bound(std::span<const Complex> values, std::size_t N, std::size_t H, const FrequencyGrid& grid) {
  require(N >= 1 && N <= values.size(), "vdc_bound: N out of range");
  require(H >= 1 && H <= N, "vdc_bound: need 1 <= H <= N");
  const auto sup = wiener_wintner_sup(values, N, grid);
  const std::vector<double> lag = parallel_map(H, [&](std::size_t i) {
    const std::size_t h = i + 1;
    if (h >= N) return 0.0;
    const Complex c = pairwise_reduce(0, N - h, [&](std::size_t n) { return values[n] * std::conj(values[n + h]); });
    return std::abs(c) / static_cast<double>(N);
  });
  const double Hd = static_cast<double>(H);
  const double rhs = kVanDerCorputConstant * (1.0 / Hd + pairwise_sum(std::span<const double>(lag)) / Hd);
  BoundReport r = make_report(sup.value * sup.value, rhs);
  double amax = 0.0;
  for (std::size_t n = 0; n < N; ++n) amax = std::max(amax, std::abs(values[n]));
  if (amax > 1.0 + kUnitTolerance) {
    r.informational = true;
    r.notes.push_back("sequence exceeds modulus 1; the constant C=4 is not proven for it");
  }
  r.params = {{"N", double(N)},
              {"H", Hd},
              {"C", kVanDerCorputConstant},
              {"M", double(grid.resolution())},
              {"argmax", sup.argmax},
              {"grid_error", sup.grid_error}};
  r.notes.push_back("lag correlations normalized by 1/N");
  return r;
}

BoundReport check_upbound0(const StackEntry& f_entry, const ObservableOn& g, std::size_t N, std::size_t samples,
                           std::uint64_t seed) {
  require(N >= 4, "check_upbound0: N must be at least 4");
  require(samples >= 1, "check_upbound0: need at least one sample");
  const Observable projected = conditional_expectation(f_entry.system, f_entry.observable, FactorTag::Kronecker);
  const double rhs = std::sqrt(projected.l2_norm_squared()) * g.observable.sup_norm_bound();
  const OrbitSeries f = f_entry.sample(N);
  struct Trend {
    double quarter, half, full;
  };
  const std::vector<Trend> per_sample = parallel_map(samples, [&](std::size_t s) {
    const OrbitSeries gs = sample_observable(g.system, g.observable, random_point(g.system, seed, s), N);
    const std::array<OrbitSeries, 2> stack{f, gs};
    const std::span<const OrbitSeries> view(stack);
    return Trend{std::abs(return_times_average(view, N / 4)), std::abs(return_times_average(view, N / 2)),
                 std::abs(return_times_average(view, N))};
  });
  Trend best{0.0, 0.0, 0.0};
  for (const auto& t : per_sample) {
    best.quarter = std::max(best.quarter, t.quarter);
    best.half = std::max(best.half, t.half);
    best.full = std::max(best.full, t.full);
  }
  BoundReport r = make_report(best.full, rhs);
  r.params = {{"N", double(N)}, {"samples", double(samples)}, {"seed", double(seed)}, {"lhs_quarter", best.quarter},
              {"lhs_half", best.half}};
  if (g.observable.sup_norm_bound() > 1.0 + kUnitTolerance) r.notes.push_back("g exceeds sup norm 1");
  return r;
}

BoundReport check_upbound_k(std::span<const StackEntry> stack, int k, std::size_t H, std::size_t N,
                            const FrequencyGrid& grid) {
  require(k == 1 || k == 2, "check_upbound_k: k must be 1 or 2");
  require(!stack.empty(), "check_upbound_k: empty stack");
  const StackEntry& f = stack.front();
  const SeminormEstimate nk = n_seminorm(f.system, f.observable, k + 1, H, N, f.start);

  std::vector<OrbitSeries> series;
  for (const auto& e : stack) series.push_back(e.sample(N));
  const std::span<const OrbitSeries> view(series);
  const double lhs = std::norm(return_times_average(view, N));
  BoundReport r = make_report(lhs, kVanDerCorputConstant * nk.value * nk.value);
  const auto ww = wiener_wintner_sup(series.front(), N, grid);
  r.params = {{"N", double(N)},
              {"H", double(H)},
              {"k", double(k)},
              {"C", kVanDerCorputConstant},
              {"M", double(grid.resolution())},
              {"n_seminorm", nk.value},
              {"ww_sup_f", ww.value},
              {"lhs_quarter", std::norm(return_times_average(view, N / 4))},
              {"lhs_half", std::norm(return_times_average(view, N / 2))}};
  r.notes.push_back("n_seminorm via " + to_string(nk.path));
  for (std::size_t i = 1; i < stack.size(); ++i)
    if (stack[i].observable.sup_norm_bound() > 1.0 + kUnitTolerance)
      r.notes.push_back("stack entry " + std::to_string(i) + " exceeds sup norm 1");
  return r;
}

BoundReport check_ww_rt_bound(const StackEntry& f_entry, const ObservableOn& g1, std::size_t N,
                              const FrequencyGrid& grid, std::size_t samples, std::uint64_t seed, std::size_t H) {
  require(N >= 4 && 4 * H <= N, "check_ww_rt_bound: need 4H <= N");
  require(samples >= 1, "check_ww_rt_bound: need at least one sample");
  const OrbitSeries f = f_entry.sample(N);
  struct Trend {
    double quarter, half, full;
  };
  const std::vector<Trend> per_sample = parallel_map(samples, [&](std::size_t s) {
    const OrbitSeries gs = sample_observable(g1.system, g1.observable, random_point(g1.system, seed, s), N);
    std::vector<Complex> prod(N);
    for (std::size_t n = 0; n < N; ++n) prod[n] = f.values[n] * gs.values[n];
    const auto sq = [&](std::size_t n) {
      const double v = wiener_wintner_sup(prod, n, grid).value;
      return v * v;
    };
    return Trend{sq(N / 4), sq(N / 2), sq(N)};
  });
  std::vector<double> q, h, full;
  for (const auto& t : per_sample) {
    q.push_back(t.quarter);
    h.push_back(t.half);
    full.push_back(t.full);
  }
  const SeminormEstimate hk3 = hk_seminorm(f_entry.system, f_entry.observable, 3, H, N, f_entry.start);
  BoundReport r = make_report(mean(full), kVanDerCorputConstant * hk3.value * hk3.value);
  r.params = {{"N", double(N)},
              {"H", double(H)},
              {"C", kVanDerCorputConstant},
              {"M", double(grid.resolution())},
              {"samples", double(samples)},
              {"seed", double(seed)},
              {"hk3", hk3.value},
              {"lhs_quarter", mean(q)},
              {"lhs_half", mean(h)}};
  r.notes.push_back("hk_seminorm via " + to_string(hk3.path));
  if (g1.observable.sup_norm_bound() > 1.0 + kUnitTolerance) r.notes.push_back("g1 exceeds sup norm 1");
  return r;
}

BoundReport l4_l2_gap_demo(std::size_t m) {
  require(m >= 1, "l4_l2_gap_demo: m must be positive");
  CoefficientMap coeffs;
  for (std::size_t j = 1; j <= m; ++j) coeffs.emplace(Frequency{static_cast<std::int64_t>(j)}, 1.0);
  const FourierNorms norms = hk_seminorm_fourier(coeffs);
  BoundReport r = make_report(norms.l2, norms.l4);
  r.params = {{"m", double(m)}};
  r.notes.push_back("lhs = ||E(f|K)||_2 = l2 norm, rhs = |||f|||_2 = l4 norm on a rotation; ratio is unbounded in m");
  return r;
}

std::vector<WwTransferRow> ww_transfer_diagnostic(const StackEntry& f_entry, const ObservableOn& g,
                                                  const std::vector<std::size_t>& N_list, const FrequencyGrid& grid,
                                                  std::size_t samples, std::uint64_t seed) {
  require(!N_list.empty(), "ww_transfer_diagnostic: empty N list");
  const std::size_t Nmax = *std::max_element(N_list.begin(), N_list.end());
  const OrbitSeries f = f_entry.sample(Nmax);
  std::vector<WwTransferRow> rows;
  for (std::size_t N : N_list) {
    WwTransferRow row;
    row.N = N;
    row.ww_sup = wiener_wintner_sup(f, N, grid).value;
    row.l2_estimate = quadratic_rt_functional(f, g.system, g.observable, N, MonteCarloMode{samples, seed});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ergolab

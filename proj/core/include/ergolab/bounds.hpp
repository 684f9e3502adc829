#pragma once

// Checkable forms of the upper-bound chain for return-times averages.
//
// Every bound reuses the finite Van der Corput constant C = 4. For complex
// u_1..u_N and 1 <= H <= N the classical inequality reads
//
//   H^2 |sum u_n|^2 <= H (N+H-1) sum |u_n|^2
//                      + 2 (N+H-1) sum_{h=1}^{H-1} (H-h) Re sum_{n=1}^{N-h} u_n conj(u_{n+h}).
//
// With |u_n| <= 1, N+H-1 < 2N and (H-h)/H <= 1, dividing by H^2 N^2 gives
//
//   |(1/N) sum u_n|^2 <= 2/H + (4/H) sum_{h=1}^{H} |(1/N) sum_{n=1}^{N-h} u_n conj(u_{n+h})|
//                     <= 4 (1/H + (1/H) sum_{h=1}^{H} |(1/N) sum_{n=1}^{N-h} u_n conj(u_{n+h})|).
//
// Taking u_n = a_n e(n eps) leaves every lag correlation's modulus unchanged,
// so the right side bounds the supremum over eps as well.
//
// Reports are plain values: they record both sides and never assert.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ergolab/averages.hpp"
#include "ergolab/observable.hpp"
#include "ergolab/systems.hpp"

namespace ergolab {

inline constexpr double kVanDerCorputConstant = 4.0;
/// Below this the right side counts as zero and lhs is compared to a floor.
inline constexpr double kNearZeroRhs = 1e-6;
inline constexpr double kDefaultFloor = 0.02;

struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs; 0 when both vanish, +inf when only rhs does.
  double ratio = 0.0;
  /// rhs == 0 < lhs.
  bool rhs_zero = false;
  /// rhs < kNearZeroRhs: compare lhs against floor instead of rhs.
  bool near_zero_rhs = false;
  double floor = kDefaultFloor;
  /// The proven constant does not apply (e.g. |a_n| > 1).
  bool informational = false;
  std::map<std::string, double> params;
  std::vector<std::string> notes;

  /// lhs <= rhs + slack, or lhs <= floor when rhs is near zero.
  bool holds(double slack = 0.0) const;
};

/// Fills ratio and the zero flags from lhs and rhs.
BoundReport make_report(double lhs, double rhs);

/// lhs = (grid sup)^2, rhs = C (1/H + (1/H) sum_{h=1}^H |(1/N) sum_{n=1}^{N-h} a_n conj(a_{n+h})|).
BoundReport vdc_bound(std::span<const Complex> values, std::size_t N, std::size_t H, const FrequencyGrid& grid);
inline BoundReport vdc_bound(const OrbitSeries& series, std::size_t N, std::size_t H, const FrequencyGrid& grid) {
  return vdc_bound(series.span(), N, H, grid);
}

/// The (system, g) half of a two-term stack; starts are drawn per sample.
struct ObservableOn {
  DynamicalSystem system;
  Observable observable;
};

/// lhs = max over seeded starts y of |(1/N) sum f(T^n x) g(S^n y)|,
/// rhs = ||E(f|K_T)||_2 * sup_norm_bound(g).
BoundReport check_upbound0(const StackEntry& f_entry, const ObservableOn& g, std::size_t N, std::size_t samples,
                           std::uint64_t seed);

/// lhs = |return_times_average(stack, N)|^2, rhs = C N_{k+1}(f)^2 for k in {1, 2}.
BoundReport check_upbound_k(std::span<const StackEntry> stack, int k, std::size_t H, std::size_t N,
                            const FrequencyGrid& grid);

/// lhs = mean over seeded y of (grid sup of f(T^n x) g(S^n y))^2,
/// rhs = C |||f|||_3^2. Also records lhs at N/4 and N/2.
BoundReport check_ww_rt_bound(const StackEntry& f_entry, const ObservableOn& g1, std::size_t N,
                              const FrequencyGrid& grid, std::size_t samples, std::uint64_t seed,
                              std::size_t H = 32);

/// f with m unit Fourier coefficients: lhs = ||f^||_l2 = sqrt(m),
/// rhs = ||f^||_l4 = m^{1/4}, ratio = m^{1/4}.
BoundReport l4_l2_gap_demo(std::size_t m);

struct WwTransferRow {
  std::size_t N = 0;
  double ww_sup = 0.0;
  double l2_estimate = 0.0;
};

/// For each N: the grid sup of the f-series and the Monte-Carlo estimate of
/// int |(1/N) sum f_n g(S^n y)|^2 dnu(y).
std::vector<WwTransferRow> ww_transfer_diagnostic(const StackEntry& f_entry, const ObservableOn& g,
                                                  const std::vector<std::size_t>& N_list, const FrequencyGrid& grid,
                                                  std::size_t samples, std::uint64_t seed);

}  // namespace ergolab

#pragma once

// Finite averages along orbits: Birkhoff and multiterm return-times averages,
// the Wiener-Wintner supremum over a frequency grid, lag autocorrelations
// (spectral-measure coefficients) and the quadratic return-times functional
//   int |(1/N) sum_n f_n g(S^n y)|^2 dnu(y).
//
// All sums run n = 1..N over OrbitSeries entries and use pairwise summation.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ergolab/observable.hpp"
#include "ergolab/systems.hpp"

namespace ergolab {

Complex birkhoff_average(const OrbitSeries& series, std::size_t N);

/// One (system, observable, start) triple of a return-times stack.
struct StackEntry {
  DynamicalSystem system;
  Observable observable;
  Point start;

  OrbitSeries sample(std::size_t N) const { return sample_observable(system, observable, start, N); }
};

/// (1/N) sum_{n=1}^N prod_i a_n^(i). The first entry plays the role of f.
Complex return_times_average(std::span<const StackEntry> stack, std::size_t N);
Complex return_times_average(std::span<const OrbitSeries> series, std::size_t N);

/// Uniform grid {j/M : j = 0..M-1}.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::size_t resolution);
  /// Default resolution 8N.
  static FrequencyGrid for_length(std::size_t N) { return FrequencyGrid(8 * N); }

  std::size_t resolution() const noexcept { return M_; }
  std::size_t size() const noexcept { return M_; }
  double frequency(std::size_t j) const noexcept { return static_cast<double>(j) / static_cast<double>(M_); }
  bool is_power_of_two() const noexcept { return (M_ & (M_ - 1)) == 0; }
  /// Bound on (true sup) - (grid sup) for |a_n| <= 1: pi N / (2M).
  double lipschitz_error(std::size_t N) const noexcept;

 private:
  std::size_t M_;
};

struct WienerWintnerSup {
  double value = 0.0;
  double argmax = 0.0;
  std::size_t argmax_index = 0;
  double grid_error = 0.0;
};

enum class GridMethod { Auto, Fast, Direct };

/// max over the grid of |(1/N) sum_{n=1}^N a_n e(n eps)|, ties to the
/// smallest frequency. Fast uses an FFT of size M (power of two) to screen
/// candidates and re-evaluates them directly, so the value at a given
/// frequency does not depend on the grid it came from.
WienerWintnerSup wiener_wintner_sup(std::span<const Complex> values, std::size_t N, const FrequencyGrid& grid,
                                    GridMethod method = GridMethod::Auto);
inline WienerWintnerSup wiener_wintner_sup(const OrbitSeries& series, std::size_t N, const FrequencyGrid& grid,
                                           GridMethod method = GridMethod::Auto) {
  return wiener_wintner_sup(series.span(), N, grid, method);
}

/// |(1/N) sum a_n e(n j/M)| evaluated directly with exact phase reduction.
double modulated_average_modulus(std::span<const Complex> values, std::size_t N, std::size_t j, std::size_t M);

/// Lag coefficients sigma(h) = int conj(g) g o S^h dnu for h = 0..H.
struct SpectralCoefficients {
  std::size_t H = 0;
  std::vector<Complex> coeffs;
  /// Orbit length of the estimator; 0 for closed-form coefficients.
  std::size_t estimator_N = 0;

  /// sigma(-h) = conj(sigma(h)).
  Complex operator()(std::int64_t lag) const;
};

/// sigma(h) = (1/(N-h)) sum_{n=1}^{N-h} conj(g(S^n y)) g(S^{n+h} y). Requires H <= N/2.
SpectralCoefficients spectral_coefficients(const DynamicalSystem& system, const Observable& g, const Point& start,
                                           std::size_t H, std::size_t N);

/// Closed-form coefficients from exact composition. Throws InvalidArgument
/// when composition is not exact for the system.
SpectralCoefficients exact_spectral_coefficients(const DynamicalSystem& system, const Observable& g,
                                                 std::size_t H);

struct MonteCarloMode {
  std::size_t samples = 100;
  std::uint64_t seed = 0;
};
struct SpectralMode {
  SpectralCoefficients coefficients;
};
using QuadraticMode = std::variant<MonteCarloMode, SpectralMode>;

/// int |(1/N) sum_{n=1}^N f_n g(S^n y)|^2 dnu(y), either as a Monte-Carlo
/// mean over seeded uniform starts or as the double sum
/// (1/N^2) sum_{n,m} f_n conj(f_m) sigma(n-m).
double quadratic_rt_functional(const OrbitSeries& f, const DynamicalSystem& gsystem, const Observable& g,
                               std::size_t N, const QuadraticMode& mode);

/// The integrand at a single start y.
double quadratic_rt_at(const OrbitSeries& f, const DynamicalSystem& gsystem, const Observable& g, const Point& y,
                       std::size_t N);

}  // namespace ergolab

#include "ergolab/averages.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ergolab/errors.hpp"
#include "ergolab/fourier.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/summation.hpp"
#include "fft.hpp"

namespace ergolab {

namespace {

void require_length(std::size_t have, std::size_t N, const char* where) {
  if (N == 0 || N > have)
    throw InvalidArgument(std::string(where) + ": N=" + std::to_string(N) + " out of range for series of length " +
                          std::to_string(have));
}

// FFT screening keeps every frequency within this distance of the FFT maximum.
constexpr double kScreenTolerance = 1e-9;
constexpr std::size_t kMaxCandidates = 256;

}  // namespace

Complex birkhoff_average(const OrbitSeries& series, std::size_t N) {
  require_length(series.size(), N, "birkhoff_average");
  return pairwise_sum(series.span().first(N)) / static_cast<double>(N);
}

Complex return_times_average(std::span<const OrbitSeries> series, std::size_t N) {
  if (series.empty()) throw InvalidArgument("return_times_average: empty stack");
  for (const auto& s : series) require_length(s.size(), N, "return_times_average");
  const Complex total = pairwise_reduce(0, N, [&](std::size_t n) {
    Complex p = series[0].values[n];
    for (std::size_t i = 1; i < series.size(); ++i) p *= series[i].values[n];
    return p;
  });
  return total / static_cast<double>(N);
}

Complex return_times_average(std::span<const StackEntry> stack, std::size_t N) {
  if (stack.empty()) throw InvalidArgument("return_times_average: empty stack");
  std::vector<OrbitSeries> series;
  series.reserve(stack.size());
  for (const auto& e : stack) series.push_back(e.sample(N));
  return return_times_average(std::span<const OrbitSeries>(series), N);
}

FrequencyGrid::FrequencyGrid(std::size_t resolution) : M_(resolution) {
  if (resolution < 2) throw InvalidArgument("frequency grid: resolution must be at least 2");
}

double FrequencyGrid::lipschitz_error(std::size_t N) const noexcept {
  return std::numbers::pi * static_cast<double>(N) / (2.0 * static_cast<double>(M_));
}

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

}  // namespace

double modulated_average_modulus(std::span<const Complex> values, std::size_t N, std::size_t j, std::size_t M) {
  const std::size_t g = std::gcd(j, M);
  const std::uint64_t p = j / g, q = M / g;
  const Complex total = pairwise_reduce(0, N, [&](std::size_t i) {
    const std::uint64_t n = i + 1;
    const std::uint64_t r = mul_mod(n, p, q);
    double t = static_cast<double>(r) / static_cast<double>(q);
    if (t >= 0.5) t -= 1.0;
    const double angle = 2.0 * std::numbers::pi * t;
    return values[i] * Complex(std::cos(angle), std::sin(angle));
  });
  return std::abs(total) / static_cast<double>(N);
}

WienerWintnerSup wiener_wintner_sup(std::span<const Complex> values, std::size_t N, const FrequencyGrid& grid,
                                    GridMethod method) {
  require_length(values.size(), N, "wiener_wintner_sup");
  const std::size_t M = grid.resolution();
  if (method == GridMethod::Fast && !grid.is_power_of_two())
    throw InvalidArgument("wiener_wintner_sup: fast path needs a power-of-two grid");
  const bool fast = method == GridMethod::Fast || (method == GridMethod::Auto && grid.is_power_of_two());

  std::vector<std::size_t> candidates;
  if (fast) {
    std::vector<Complex> buf(M);
    for (std::size_t i = 0; i < N; ++i) buf[(i + 1) % M] += values[i];
    detail::backward_dft(buf);
    std::vector<double> mag(M);
    double best = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      mag[j] = std::abs(buf[j]) / static_cast<double>(N);
      best = std::max(best, mag[j]);
    }
    const double cut = best - kScreenTolerance * std::max(1.0, best);
    for (std::size_t j = 0; j < M && candidates.size() < kMaxCandidates; ++j)
      if (mag[j] >= cut) candidates.push_back(j);
  } else {
    candidates.resize(M);
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  }

  const std::vector<double> direct = parallel_map(
      candidates.size(), [&](std::size_t c) { return modulated_average_modulus(values, N, candidates[c], M); });
  WienerWintnerSup out;
  out.value = -1.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (direct[c] > out.value) {
      out.value = direct[c];
      out.argmax_index = candidates[c];
    }
  }
  out.argmax = grid.frequency(out.argmax_index);
  out.grid_error = grid.lipschitz_error(N);
  return out;
}

Complex SpectralCoefficients::operator()(std::int64_t lag) const {
  const auto h = static_cast<std::size_t>(lag < 0 ? -lag : lag);
  if (h > H) throw InvalidArgument("spectral coefficients: lag " + std::to_string(lag) + " beyond H=" + std::to_string(H));
  return lag < 0 ? std::conj(coeffs[h]) : coeffs[h];
}

SpectralCoefficients spectral_coefficients(const DynamicalSystem& system, const Observable& g, const Point& start,
                                           std::size_t H, std::size_t N) {
  if (N == 0 || 2 * H > N) throw InvalidArgument("spectral_coefficients: need H <= N/2");
  const OrbitSeries s = sample_observable(system, g, start, N);
  SpectralCoefficients out;
  out.H = H;
  out.estimator_N = N;
  out.coeffs = parallel_map(H + 1, [&](std::size_t h) {
    const Complex sum = pairwise_reduce(0, N - h, [&](std::size_t i) { return std::conj(s.values[i]) * s.values[i + h]; });
    return sum / static_cast<double>(N - h);
  });
  out.coeffs[0] = Complex(out.coeffs[0].real(), 0.0);
  return out;
}

SpectralCoefficients exact_spectral_coefficients(const DynamicalSystem& system, const Observable& g, std::size_t H) {
  auto c = exact_correlations(system, g, H);
  if (!c) throw InvalidArgument("exact_spectral_coefficients: no closed form for " + system.describe());
  SpectralCoefficients out;
  out.H = H;
  out.coeffs = std::move(*c);
  out.coeffs[0] = Complex(out.coeffs[0].real(), 0.0);
  return out;
}

double quadratic_rt_at(const OrbitSeries& f, const DynamicalSystem& gsystem, const Observable& g, const Point& y,
                       std::size_t N) {
  require_length(f.size(), N, "quadratic_rt_functional");
  const OrbitSeries gs = sample_observable(gsystem, g, y, N);
  const Complex total = pairwise_reduce(0, N, [&](std::size_t n) { return f.values[n] * gs.values[n]; });
  return std::norm(total / static_cast<double>(N));
}

double quadratic_rt_functional(const OrbitSeries& f, const DynamicalSystem& gsystem, const Observable& g,
                               std::size_t N, const QuadraticMode& mode) {
  require_length(f.size(), N, "quadratic_rt_functional");
  if (const auto* mc = std::get_if<MonteCarloMode>(&mode)) {
    if (mc->samples == 0) throw InvalidArgument("quadratic_rt_functional: need at least one sample");
    const std::vector<double> vals = parallel_map(mc->samples, [&](std::size_t s) {
      return quadratic_rt_at(f, gsystem, g, random_point(gsystem, mc->seed, s), N);
    });
    return pairwise_sum(std::span<const double>(vals)) / static_cast<double>(mc->samples);
  }
  const auto& sigma = std::get<SpectralMode>(mode).coefficients;
  if (sigma.H + 1 < N)
    throw InvalidArgument("quadratic_rt_functional: spectral mode needs lags up to N-1=" + std::to_string(N - 1) +
                          ", have " + std::to_string(sigma.H));
  // sum_{n,m} f_n conj(f_m) sigma(n-m) = r(0) sigma(0) + 2 Re sum_{d>=1} sigma(d) r(d),
  // r(d) = sum_m f_{m+d} conj(f_m).
  // The total can be many orders below the N^2 unit terms it cancels from,
  // so lags accumulate in extended precision.
  using LComplex = std::complex<long double>;
  const auto widen = [](Complex z) { return LComplex(z.real(), z.imag()); };
  const std::vector<long double> lag_terms = parallel_map(N, [&](std::size_t d) {
    LComplex r{};
    for (std::size_t m = 0; m + d < N; ++m) r += widen(f.values[m + d]) * std::conj(widen(f.values[m]));
    const long double t = (widen(sigma.coeffs[d]) * r).real();
    return d == 0 ? t : 2.0L * t;
  });
  long double total = 0.0L;
  for (long double t : lag_terms) total += t;
  return static_cast<double>(total / (static_cast<long double>(N) * static_cast<long double>(N)));
}

}  // namespace ergolab

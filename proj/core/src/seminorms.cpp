#include "ergolab/seminorms.hpp"

#include <cmath>
#include <map>

#include "ergolab/errors.hpp"
#include "ergolab/fourier.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/summation.hpp"

namespace ergolab {

std::string to_string(EstimatePath path) {
  return path == EstimatePath::ExactFourier ? "exact-fourier" : "orbit-quadrature";
}

FourierNorms hk_seminorm_fourier(const CoefficientMap& coeffs) {
  double s2 = 0.0, s4 = 0.0;
  for (const auto& [m, c] : coeffs) {
    const double a = std::norm(c);
    s2 += a;
    s4 += a * a;
  }
  return {std::sqrt(s2), std::pow(s4, 0.25)};
}

Point default_start(const DynamicalSystem& system) { return random_point(system, 0x5EED5EEDULL, 0); }

namespace {

void check_sizes(const char* where, int k, std::size_t H, std::size_t N) {
  if (k < 1) throw InvalidArgument(std::string(where) + ": k must be at least 1");
  if (H < 1 || 4 * H > N) throw InvalidArgument(std::string(where) + ": need 1 <= H <= N/4");
}

// Running Cesaro means of the top-level terms.
std::vector<double> running_means(const std::vector<double>& terms) {
  std::vector<double> out(terms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc += terms[i];
    out[i] = acc / static_cast<double>(i + 1);
  }
  return out;
}

SeminormEstimate finish(std::vector<double> terms, SeminormKind kind, EstimatePath path, int k, std::size_t H,
                        std::size_t N, double root) {
  SeminormEstimate e;
  e.partials = running_means(terms);
  e.value = std::pow(e.partials.back(), 1.0 / root);
  e.k = k;
  e.H = H;
  e.N = N;
  e.kind = kind;
  e.path = path;
  return e;
}

// --- exact Fourier recursion ------------------------------------------------

// |||F|||_j^{2^j} with level 1 = |int F|^2.
double exact_power(const DynamicalSystem& sys, const Observable& F, int j, std::size_t H) {
  if (j == 1) return std::norm(F.coefficient(Frequency(F.dimension(), 0)));
  const Observable Fbar = F.conj();
  return pairwise_reduce(1, H + 1, [&](std::size_t h) {
           const Observable shifted = compose_iterate(sys, F, h);
           if (j == 2) return std::norm(inner_product(F, shifted));
           return exact_power(sys, multiply(Fbar, shifted), j - 1, H);
         }) /
         static_cast<double>(H);
}

// --- orbit recursion ---------------------------------------------------------

// Same recursion with int replaced by the mean over the first N entries.
// b must hold at least N + (j-1) H entries.
double orbit_power(std::span<const Complex> b, int j, std::size_t H, std::size_t N) {
  if (j == 1) return std::norm(pairwise_sum(b.first(N)) / static_cast<double>(N));
  return pairwise_reduce(1, H + 1, [&](std::size_t h) {
           if (j == 2) {
             const Complex c =
                 pairwise_reduce(0, N, [&](std::size_t i) { return std::conj(b[i]) * b[i + h]; });
             return std::norm(c / static_cast<double>(N));
           }
           std::vector<Complex> next(b.size() - h);
           for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::conj(b[i]) * b[i + h];
           return orbit_power(next, j - 1, H, N);
         }) /
         static_cast<double>(H);
}

}  // namespace

SeminormEstimate hk_seminorm(const DynamicalSystem& system, const Observable& f, int k, std::size_t H,
                             std::size_t N, const Point& start, PathPolicy policy) {
  check_sizes("hk_seminorm", k, H, N);
  if (f.dimension() != system.dimension()) throw InvalidArgument("hk_seminorm: dimension mismatch");
  const double root = std::ldexp(1.0, k);

  if (k == 1) {
    const double p = std::norm(integrate(system, f));
    return finish({p}, SeminormKind::HostKra, EstimatePath::ExactFourier, k, H, N, root);
  }

  if (policy != PathPolicy::QuadratureOnly && has_exact_composition(system)) {
    try {
      const Observable fbar = f.conj();
      std::vector<double> terms = parallel_map(H, [&](std::size_t i) {
        const std::size_t h = i + 1;
        const Observable shifted = compose_iterate(system, f, h);
        if (k == 2) return std::norm(inner_product(f, shifted));
        return exact_power(system, multiply(fbar, shifted), k - 1, H);
      });
      return finish(std::move(terms), SeminormKind::HostKra, EstimatePath::ExactFourier, k, H, N, root);
    } catch (const ExactArithmeticOverflow&) {
      if (policy == PathPolicy::ExactOnly) throw;
    }
  } else if (policy == PathPolicy::ExactOnly) {
    throw InvalidArgument("hk_seminorm: no exact composition for " + system.describe());
  }

  const std::size_t L = N + static_cast<std::size_t>(k - 1) * H;
  const OrbitSeries s = sample_observable(system, f, start, L);
  const std::span<const Complex> a = s.span();
  std::vector<double> terms = parallel_map(H, [&](std::size_t i) {
    const std::size_t h = i + 1;
    if (k == 2) {
      const Complex c = pairwise_reduce(0, N, [&](std::size_t n) { return std::conj(a[n]) * a[n + h]; });
      return std::norm(c / static_cast<double>(N));
    }
    std::vector<Complex> next(L - h);
    for (std::size_t n = 0; n < next.size(); ++n) next[n] = std::conj(a[n]) * a[n + h];
    return orbit_power(next, k - 1, H, N);
  });
  return finish(std::move(terms), SeminormKind::HostKra, EstimatePath::OrbitQuadrature, k, H, N, root);
}

// --- N_k ---------------------------------------------------------------------

namespace {

bool is_skew(SystemKind kind) { return kind == SystemKind::SkewAnzai || kind == SystemKind::SkewSqrt; }

// Skew products (x, y) -> (x + a, y + rho(x)). Writing f = sum_m2 F_m2(x) e(m2 y),
// the y-integrals of conj(f) f o T^h are explicit, and the remaining x-integral
// is a mean along the base rotation orbit x_n = x_0 + n a. The fiber
// displacement after h steps from x_n is C_{n+h} - C_n, C the cocycle sums.
std::vector<double> fiber_terms(const DynamicalSystem& system, const Observable& f, FactorTag tag, std::size_t H,
                                std::size_t N, const Point& start) {
  const auto& block = system.blocks()[0];
  const std::size_t L = N + H + 1;

  std::vector<std::int64_t> m2s;
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, Complex>>> by_fiber;
  for (const auto& [m, c] : f.terms()) by_fiber[m[1]].emplace_back(m[0], c);
  for (const auto& [m2, row] : by_fiber) m2s.push_back(m2);
  const std::size_t K = m2s.size();

  std::vector<Fixed> cocycle(L + 1);
  std::vector<Complex> F(K * L);  // F[k * L + n] = F_{m2s[k]}(x_n)
  Fixed x = start.fixed(0);
  for (std::size_t n = 0; n < L; ++n) {
    if (n > 0) {
      cocycle[n] = cocycle[n - 1] + skew_cocycle(block.kind, x);
      x += block.alpha_fixed;
    }
    std::size_t k = 0;
    for (const auto& [m2, row] : by_fiber) {
      Complex v{};
      for (const auto& [m1, c] : row) v += c * unit_phase(static_cast<Fixed>(m1) * x);
      F[k++ * L + n] = v;
    }
  }

  // For the full algebra, group pairs (k, k') by the y-frequency m2 - m2'.
  std::vector<std::size_t> pair_group(K * K);
  std::size_t groups = 0;
  if (tag == FactorTag::FullAlgebra) {
    std::map<std::int64_t, std::size_t> index;
    for (std::size_t a = 0; a < K; ++a)
      for (std::size_t b = 0; b < K; ++b) {
        const auto [it, fresh] = index.emplace(m2s[a] - m2s[b], index.size());
        pair_group[a * K + b] = it->second;
      }
    groups = index.size();
  }

  return parallel_map(H, [&](std::size_t i) {
    const std::size_t h = i + 1;
    std::vector<Complex> fiber_phase(K);
    std::vector<Complex> group_sum(groups);
    const auto at = [&](std::size_t n) {
      const Fixed shift = cocycle[n + h] - cocycle[n];
      for (std::size_t k = 0; k < K; ++k) fiber_phase[k] = unit_phase(static_cast<Fixed>(m2s[k]) * shift);
    };
    switch (tag) {
      case FactorTag::Trivial:
      case FactorTag::Kronecker: {
        const auto fiber_mean = [&](std::size_t n) {
          at(n);
          Complex e{};
          for (std::size_t k = 0; k < K; ++k) e += std::conj(F[k * L + n]) * F[k * L + n + h] * fiber_phase[k];
          return e;
        };
        if (tag == FactorTag::Trivial) {
          const Complex total = pairwise_reduce(1, N + 1, fiber_mean);
          return std::norm(total / static_cast<double>(N));
        }
        return pairwise_reduce(1, N + 1, [&](std::size_t n) { return std::norm(fiber_mean(n)); }) /
               static_cast<double>(N);
      }
      case FactorTag::FullAlgebra:
        return pairwise_reduce(1, N + 1,
                               [&](std::size_t n) {
                                 at(n);
                                 std::fill(group_sum.begin(), group_sum.end(), Complex{});
                                 for (std::size_t a = 0; a < K; ++a)
                                   for (std::size_t b = 0; b < K; ++b)
                                     group_sum[pair_group[a * K + b]] +=
                                         std::conj(F[b * L + n]) * F[a * L + n + h] * fiber_phase[a];
                                 double s = 0.0;
                                 for (const auto& g : group_sum) s += std::norm(g);
                                 return s;
                               }) /
               static_cast<double>(N);
    }
    return 0.0;
  });
}

enum class SeriesRoute { Trivial, Full, RelativeProduct };

// Routes that only need samples a_n = f(T^n x) along one or two orbits.
std::vector<double> series_terms(const DynamicalSystem& system, const Observable& f, SeriesRoute route,
                                 std::size_t H, std::size_t N, const Point& start) {
  const OrbitSeries s = sample_observable(system, f, start, N + H);
  const std::span<const Complex> a = s.span();
  OrbitSeries twin;
  if (route == SeriesRoute::RelativeProduct) {
    // Same base coordinates, independent doubling coordinates: an orbit of the
    // relative product over the rotation factor.
    Point other = start;
    const Point fresh = random_point(system, 0xFACADEULL, 0);
    for (const auto& b : system.blocks())
      if (b.kind == SystemKind::Doubling) {
        other.fixed(b.offset) = fresh.fixed(b.offset);
        other.tail(b.offset) = fresh.tail(b.offset);
      }
    twin = sample_observable(system, f, other, N + H);
  }
  return parallel_map(H, [&](std::size_t i) {
    const std::size_t h = i + 1;
    switch (route) {
      case SeriesRoute::Trivial: {
        const Complex c = pairwise_reduce(0, N, [&](std::size_t n) { return std::conj(a[n]) * a[n + h]; });
        return std::norm(c / static_cast<double>(N));
      }
      case SeriesRoute::Full:
        return pairwise_reduce(0, N, [&](std::size_t n) { return std::norm(a[n]) * std::norm(a[n + h]); }) /
               static_cast<double>(N);
      case SeriesRoute::RelativeProduct: {
        const auto& b = twin.values;
        const Complex c = pairwise_reduce(
            0, N, [&](std::size_t n) { return std::conj(a[n]) * a[n + h] * b[n] * std::conj(b[n + h]); });
        return c.real() / static_cast<double>(N);
      }
    }
    return 0.0;
  });
}

std::vector<double> quadrature_terms(const DynamicalSystem& system, const Observable& f, FactorTag tag,
                                     std::size_t H, std::size_t N, const Point& start) {
  if (is_skew(system.kind())) return fiber_terms(system, f, tag, H, N, start);
  if (tag == FactorTag::Trivial || (tag == FactorTag::Kronecker && system.kind() == SystemKind::Doubling))
    return series_terms(system, f, SeriesRoute::Trivial, H, N, start);
  bool has_doubling = false;
  for (const auto& b : system.blocks()) has_doubling |= b.kind == SystemKind::Doubling;
  if (tag == FactorTag::FullAlgebra || !has_doubling) return series_terms(system, f, SeriesRoute::Full, H, N, start);
  return series_terms(system, f, SeriesRoute::RelativeProduct, H, N, start);
}

}  // namespace

SeminormEstimate n_seminorm(const DynamicalSystem& system, const Observable& f, int k, std::size_t H,
                            std::size_t N, const std::optional<Point>& start, PathPolicy policy) {
  check_sizes("n_seminorm", k, H, N);
  if (f.dimension() != system.dimension()) throw InvalidArgument("n_seminorm: dimension mismatch");
  const FactorTag tag = distal_factor(system, k - 1);
  if (!projection_available(system, tag))
    throw ProjectionUnavailable("n_seminorm: no projection onto " + to_string(tag) + " for " + system.describe());

  if (policy != PathPolicy::QuadratureOnly && has_exact_composition(system)) {
    try {
      const Observable fbar = f.conj();
      std::vector<double> terms = parallel_map(H, [&](std::size_t i) {
        const Observable g = multiply(fbar, compose_iterate(system, f, i + 1));
        return conditional_expectation(system, g, tag).l2_norm_squared();
      });
      return finish(std::move(terms), SeminormKind::NFactor, EstimatePath::ExactFourier, k, H, N, 4.0);
    } catch (const ExactArithmeticOverflow&) {
      if (policy == PathPolicy::ExactOnly) throw;
    }
  } else if (policy == PathPolicy::ExactOnly) {
    throw InvalidArgument("n_seminorm: no exact composition for " + system.describe());
  }

  const Point x0 = start.value_or(default_start(system));
  if (x0.dimension() != system.dimension()) throw InvalidArgument("n_seminorm: start dimension mismatch");
  std::vector<double> terms = quadrature_terms(system, f, tag, H, N, x0);
  for (auto& t : terms) t = std::max(t, 0.0);
  return finish(std::move(terms), SeminormKind::NFactor, EstimatePath::OrbitQuadrature, k, H, N, 4.0);
}

}  // namespace ergolab

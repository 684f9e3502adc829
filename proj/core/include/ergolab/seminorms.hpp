#pragma once

// Host-Kra seminorms |||f|||_k through the Cesaro recursion
//   |||f|||_1 = |int f|,
//   |||f|||_{k+1}^{2^{k+1}} = (1/H) sum_{h=1}^H |||conj(f) f o T^h|||_k^{2^k},
// and the factor seminorms
//   N_k(f)^4 = (1/H) sum_{h=1}^H ||E(conj(f) f o T^h | A_{k-1})||_2^2,
// where A_0 is trivial and A_j is the catalog's j-step distal factor.
//
// Both are computed exactly from Fourier coefficients when the system admits
// closed-form composition, otherwise by orbit quadrature. The estimate records
// which path produced it.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/observable.hpp"
#include "ergolab/systems.hpp"

namespace ergolab {

enum class SeminormKind { HostKra, NFactor, FourierClosedForm };
enum class EstimatePath { ExactFourier, OrbitQuadrature };
enum class PathPolicy { Auto, ExactOnly, QuadratureOnly };

std::string to_string(EstimatePath path);

struct SeminormEstimate {
  double value = 0.0;
  int k = 0;
  std::size_t H = 0;
  std::size_t N = 0;
  /// Running Cesaro means of the top-level power for H' = 1..H. value is the
  /// 2^k-th root (HostKra) or 4th root (NFactor) of partials.back().
  std::vector<double> partials;
  SeminormKind kind = SeminormKind::HostKra;
  EstimatePath path = EstimatePath::ExactFourier;
};

// --- factors ---------------------------------------------------------------

enum class FactorTag { Trivial, Kronecker, FullAlgebra };

std::string to_string(FactorTag tag);

/// Whether conditional_expectation has a rule for (tag, system).
bool projection_available(const DynamicalSystem& system, FactorTag tag);

/// Projection onto a catalog factor:
///   Trivial     -> the constant int f (any system)
///   FullAlgebra -> f (any system)
///   Kronecker   -> f on Rotation; int f on Doubling; the fiber average
///                  (drop terms with nonzero y-frequency) on the skews; on
///                  products of rotations and doubling maps, drop terms with
///                  nonzero frequency in a doubling coordinate.
/// Throws ProjectionUnavailable for any other pair.
Observable conditional_expectation(const DynamicalSystem& system, const Observable& f, FactorTag tag);

/// The factor A_level used to condition N_{level+1}. Throws
/// ProjectionUnavailable when the catalog has no description of A_level.
FactorTag distal_factor(const DynamicalSystem& system, int level);

// --- seminorms -------------------------------------------------------------

struct FourierNorms {
  double l2 = 0.0;
  double l4 = 0.0;
};

/// (sum |c|^2)^{1/2} and (sum |c|^4)^{1/4}. On a rotation these are
/// ||E(f|K)||_2 and |||f|||_2.
FourierNorms hk_seminorm_fourier(const CoefficientMap& coeffs);

/// Requires k >= 1 and 4H <= N. start is used only on the quadrature path.
SeminormEstimate hk_seminorm(const DynamicalSystem& system, const Observable& f, int k, std::size_t H,
                             std::size_t N, const Point& start, PathPolicy policy = PathPolicy::Auto);

/// n_seminorm(..., k, ...) is N_k, conditioning on A_{k-1}. Requires k >= 1
/// and 4H <= N. Without a start the quadrature path uses default_start.
SeminormEstimate n_seminorm(const DynamicalSystem& system, const Observable& f, int k, std::size_t H,
                            std::size_t N, const std::optional<Point>& start = std::nullopt,
                            PathPolicy policy = PathPolicy::Auto);

/// Seeded random start used when a caller does not supply one.
Point default_start(const DynamicalSystem& system);

}  // namespace ergolab

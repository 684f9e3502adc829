#pragma once

// Catalog of explicit measure-preserving maps of the torus. Every kind
// preserves Lebesgue measure, so integrals of observables are read off the
// zero Fourier coefficient.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ergolab/observable.hpp"
#include "ergolab/torus.hpp"

namespace ergolab {

enum class SystemKind { Rotation, Doubling, SkewAnzai, SkewSqrt, Product };

std::string to_string(SystemKind kind);

struct SystemSpec {
  SystemKind kind = SystemKind::Rotation;
  /// Rotation angle for Rotation and the skew kinds.
  double alpha = 0.0;
  /// Components of a Product, in coordinate order.
  std::vector<SystemSpec> components;

  static SystemSpec rotation(double alpha) { return {SystemKind::Rotation, alpha, {}}; }
  static SystemSpec doubling() { return {SystemKind::Doubling, 0.0, {}}; }
  static SystemSpec skew_anzai(double alpha) { return {SystemKind::SkewAnzai, alpha, {}}; }
  static SystemSpec skew_sqrt(double alpha) { return {SystemKind::SkewSqrt, alpha, {}}; }
  static SystemSpec product(std::vector<SystemSpec> parts) { return {SystemKind::Product, 0.0, std::move(parts)}; }

  std::size_t dimension() const;
  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

/// True when no p/q with q <= max_denominator satisfies |q*alpha - p| < 1e-9.
/// Best approximations are continued-fraction convergents, so only those are
/// tested.
bool is_numerically_irrational(double alpha, std::int64_t max_denominator = 10'000);

/// Throws InvalidArgument when alpha is out of (0,1) or rational-like, or a
/// Product has fewer than two components.
void validate(const SystemSpec& spec);

class DynamicalSystem {
 public:
  /// One non-product map acting on the coordinates [offset, offset + dim).
  struct Block {
    SystemKind kind;
    std::size_t offset;
    double alpha;
    Fixed alpha_fixed;

    std::size_t dimension() const { return kind == SystemKind::SkewAnzai || kind == SystemKind::SkewSqrt ? 2 : 1; }
  };

  explicit DynamicalSystem(SystemSpec spec);

  const SystemSpec& spec() const noexcept { return spec_; }
  SystemKind kind() const noexcept { return spec_.kind; }
  std::size_t dimension() const noexcept { return dim_; }
  std::span<const Block> blocks() const noexcept { return blocks_; }
  std::string describe() const;

  Point step(const Point& p) const;
  /// In-place step; p must have this system's dimension.
  void advance(Point& p) const;

 private:
  SystemSpec spec_;
  std::size_t dim_ = 0;
  std::vector<Block> blocks_;
};

DynamicalSystem make_system(const SystemSpec& spec);

/// The fiber increment rho(x) of a skew block: x for SkewAnzai, sqrt(x) for
/// SkewSqrt, both reduced mod 1.
Fixed skew_cocycle(SystemKind kind, Fixed x);

/// (T^1 x, ..., T^N x). Bit-identical for identical inputs.
std::vector<Point> orbit(const DynamicalSystem& system, Point start, std::size_t N);

/// A start drawn uniformly from the torus, with random digit tails. A pure
/// function of (seed, index).
Point random_point(std::size_t dim, std::uint64_t seed, std::uint64_t index);
inline Point random_point(const DynamicalSystem& system, std::uint64_t seed, std::uint64_t index) {
  return random_point(system.dimension(), seed, index);
}

/// f sampled along an orbit. values[i] holds f(T^{i+1} x): the first entry is
/// one step past the start, matching sums that run n = 1..N.
struct OrbitSeries {
  std::vector<Complex> values;
  std::string system_id;
  std::string observable_id;
  Point start;

  std::size_t size() const noexcept { return values.size(); }
  std::span<const Complex> span() const noexcept { return values; }
};

OrbitSeries sample_observable(const DynamicalSystem& system, const Observable& f, const Point& start,
                              std::size_t N);

/// Integral against Lebesgue measure: the zero Fourier coefficient.
Complex integrate(const DynamicalSystem& system, const Observable& f);

}  // namespace ergolab

#pragma once

// Observables are finite trigonometric polynomials on the d-torus:
//   f(p) = sum_m c_m e(<m, p>),   e(t) = exp(2 pi i t).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergolab/torus.hpp"

namespace ergolab {

using Complex = std::complex<double>;
using Frequency = std::vector<std::int64_t>;
using CoefficientMap = std::map<Frequency, Complex>;

inline constexpr std::size_t kDefaultTermLimit = 1'000'000;

class Observable {
 public:
  explicit Observable(std::size_t dim = 1);
  /// Every frequency must have length dim. Exact-zero coefficients are dropped.
  Observable(std::size_t dim, CoefficientMap terms);

  static Observable constant(std::size_t dim, Complex c);
  static Observable character(Frequency m, Complex c = 1.0);
  /// cos(2 pi x_axis) = (e(x) + e(-x)) / 2.
  static Observable cosine(std::size_t dim, std::size_t axis = 0);

  std::size_t dimension() const noexcept { return dim_; }
  const CoefficientMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  Complex coefficient(const Frequency& m) const;

  /// Sum of |c_m|, an upper bound on the sup norm.
  double sup_norm_bound() const;
  /// Sum of |c_m|^2 (Parseval).
  double l2_norm_squared() const;

  Complex operator()(const Point& p) const;

  Observable conj() const;
  Observable scaled(Complex c) const;
  /// Keeps the terms whose frequency satisfies keep(m).
  template <class Pred>
  Observable filtered(const Pred& keep) const {
    CoefficientMap out;
    for (const auto& [m, c] : terms_)
      if (keep(m)) out.emplace(m, c);
    return Observable(dim_, std::move(out));
  }

  friend Observable operator+(const Observable& a, const Observable& b);
  friend Observable operator-(const Observable& a, const Observable& b);
  friend bool operator==(const Observable&, const Observable&) = default;

 private:
  std::size_t dim_;
  CoefficientMap terms_;
};

/// Pointwise product (convolution of coefficients). Throws
/// ExactArithmeticOverflow when the result would exceed term_limit terms or a
/// frequency leaves the int64 range.
Observable multiply(const Observable& a, const Observable& b,
                    std::size_t term_limit = kDefaultTermLimit);

/// Parses a literal such as `0.5*e(1)+0.5*e(-1)` or `(1-2i)*e(0,1) + 3`.
/// A bare coefficient is a constant term. dim is taken from the first e(...)
/// if not given; a literal without any e(...) needs dim (default 1).
Observable parse_observable(std::string_view literal, std::optional<std::size_t> dim = std::nullopt);

/// Lossless literal (17 significant digits) that parse_observable reads back
/// to the same coefficient map.
std::string format_observable(const Observable& f);

}  // namespace ergolab

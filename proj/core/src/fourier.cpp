#include "ergolab/fourier.hpp"

#include "ergolab/errors.hpp"

namespace ergolab {

bool has_exact_composition(const DynamicalSystem& system) {
  for (const auto& b : system.blocks())
    if (b.kind == SystemKind::SkewSqrt) return false;
  return true;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ExactArithmeticOverflow("composition: frequency overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ExactArithmeticOverflow("composition: frequency overflow");
  return r;
}

}  // namespace

Observable compose_iterate(const DynamicalSystem& system, const Observable& f, std::uint64_t h) {
  if (!has_exact_composition(system))
    throw InvalidArgument("compose_iterate: " + system.describe() + " has no closed-form composition");
  if (f.dimension() != system.dimension()) throw InvalidArgument("compose_iterate: dimension mismatch");
  if (h == 0) return f;
  // Wrapped integer h(h-1)/2, the accumulated rotation inside the affine cocycle.
  const Fixed triangular = (h % 2 == 0) ? (h / 2) * (h - 1) : h * ((h - 1) / 2);
  CoefficientMap out;
  for (const auto& [m, c] : f.terms()) {
    Frequency g = m;
    Fixed phase = 0;
    for (const auto& b : system.blocks()) {
      const std::size_t o = b.offset;
      switch (b.kind) {
        case SystemKind::Rotation:
          phase += static_cast<Fixed>(m[o]) * h * b.alpha_fixed;
          break;
        case SystemKind::Doubling:
          if (m[o] != 0) {
            if (h >= 63) throw ExactArithmeticOverflow("composition: frequency overflow");
            g[o] = checked_mul(m[o], std::int64_t{1} << h);
          }
          break;
        case SystemKind::SkewAnzai: {
          // e(m1 x_h + m2 y_h) with x_h = x + h a, y_h = y + h x + a h(h-1)/2.
          const std::int64_t m1 = m[o], m2 = m[o + 1];
          if (h > static_cast<std::uint64_t>(INT64_MAX)) throw ExactArithmeticOverflow("composition: h too large");
          g[o] = checked_add(m1, checked_mul(static_cast<std::int64_t>(h), m2));
          phase += (static_cast<Fixed>(m1) * h + static_cast<Fixed>(m2) * triangular) * b.alpha_fixed;
          break;
        }
        case SystemKind::SkewSqrt:
        case SystemKind::Product: break;
      }
    }
    out[g] += c * unit_phase(phase);
  }
  return Observable(f.dimension(), std::move(out));
}

Complex inner_product(const Observable& a, const Observable& b) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("inner_product: dimension mismatch");
  Complex acc{};
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  // Both maps are sorted by frequency: merge.
  auto ia = ta.begin();
  auto ib = tb.begin();
  while (ia != ta.end() && ib != tb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      acc += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

std::optional<std::vector<Complex>> exact_correlations(const DynamicalSystem& system, const Observable& f,
                                                       std::size_t H) {
  if (!has_exact_composition(system)) return std::nullopt;
  std::vector<Complex> out(H + 1);
  try {
    for (std::size_t h = 0; h <= H; ++h) out[h] = inner_product(f, compose_iterate(system, f, h));
  } catch (const ExactArithmeticOverflow&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace ergolab

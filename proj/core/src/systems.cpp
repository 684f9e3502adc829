#include "ergolab/systems.hpp"

#include <cmath>
#include <cstdio>

#include "ergolab/errors.hpp"
#include "ergolab/rng.hpp"

namespace ergolab {

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Rotation: return "rotation";
    case SystemKind::Doubling: return "doubling";
    case SystemKind::SkewAnzai: return "skew-anzai";
    case SystemKind::SkewSqrt: return "skew-sqrt";
    case SystemKind::Product: return "product";
  }
  return "unknown";
}

std::size_t SystemSpec::dimension() const {
  switch (kind) {
    case SystemKind::Rotation:
    case SystemKind::Doubling: return 1;
    case SystemKind::SkewAnzai:
    case SystemKind::SkewSqrt: return 2;
    case SystemKind::Product: {
      std::size_t d = 0;
      for (const auto& c : components) d += c.dimension();
      return d;
    }
  }
  return 0;
}

bool is_numerically_irrational(double alpha, std::int64_t max_denominator) {
  // Convergents p_k/q_k of the continued fraction of alpha.
  long double x = alpha;
  std::int64_t p_prev = 1, q_prev = 0;
  std::int64_t p = static_cast<std::int64_t>(std::floor(x)), q = 1;
  long double frac = x - std::floor(x);
  while (q <= max_denominator) {
    if (std::fabs(static_cast<long double>(q) * alpha - static_cast<long double>(p)) < 1e-9L) return false;
    if (frac == 0.0L) return false;
    x = 1.0L / frac;
    const auto a = static_cast<std::int64_t>(std::floor(x));
    frac = x - std::floor(x);
    const std::int64_t p_next = a * p + p_prev;
    const std::int64_t q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return true;
}

void validate(const SystemSpec& spec) {
  switch (spec.kind) {
    case SystemKind::Rotation:
    case SystemKind::SkewAnzai:
    case SystemKind::SkewSqrt:
      if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw InvalidArgument(to_string(spec.kind) + ": alpha must lie in (0,1)");
      if (!is_numerically_irrational(spec.alpha))
        throw InvalidArgument(to_string(spec.kind) + ": alpha is rational-like (denominator <= 10^4)");
      break;
    case SystemKind::Doubling: break;
    case SystemKind::Product:
      if (spec.components.size() < 2) throw InvalidArgument("product: needs at least two components");
      for (const auto& c : spec.components) validate(c);
      break;
  }
}

namespace {

void flatten(const SystemSpec& spec, std::size_t& offset, std::vector<DynamicalSystem::Block>& out) {
  if (spec.kind == SystemKind::Product) {
    for (const auto& c : spec.components) flatten(c, offset, out);
    return;
  }
  DynamicalSystem::Block b{spec.kind, offset, spec.alpha, to_fixed(spec.alpha)};
  offset += b.dimension();
  out.push_back(b);
}

}  // namespace

Fixed skew_cocycle(SystemKind kind, Fixed x) {
  if (kind == SystemKind::SkewAnzai) return x;
  if (kind != SystemKind::SkewSqrt) throw InvalidArgument("skew_cocycle: not a skew kind");
  long double s = std::sqrt(to_long_double(x));
  if (s >= 1.0L) s -= 1.0L;
  return static_cast<Fixed>(std::ldexp(s, 64));
}

DynamicalSystem::DynamicalSystem(SystemSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  std::size_t offset = 0;
  flatten(spec_, offset, blocks_);
  dim_ = offset;
}

std::string DynamicalSystem::describe() const {
  if (spec_.kind == SystemKind::Product) {
    std::string out = "product(";
    for (std::size_t i = 0; i < spec_.components.size(); ++i) {
      if (i) out += ",";
      out += DynamicalSystem(spec_.components[i]).describe();
    }
    return out + ")";
  }
  if (spec_.kind == SystemKind::Doubling) return "doubling";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s(%.17g)", to_string(spec_.kind).c_str(), spec_.alpha);
  return buf;
}

void DynamicalSystem::advance(Point& p) const {
  for (const Block& b : blocks_) {
    Fixed& x = p.fixed(b.offset);
    switch (b.kind) {
      case SystemKind::Rotation: x += b.alpha_fixed; break;
      case SystemKind::Doubling: x = (x << 1) | p.tail(b.offset).take(); break;
      case SystemKind::SkewAnzai: {
        Fixed& y = p.fixed(b.offset + 1);
        y += x;
        x += b.alpha_fixed;
        break;
      }
      case SystemKind::SkewSqrt: {
        Fixed& y = p.fixed(b.offset + 1);
        y += skew_cocycle(SystemKind::SkewSqrt, x);
        x += b.alpha_fixed;
        break;
      }
      case SystemKind::Product: break;
    }
  }
}

Point DynamicalSystem::step(const Point& p) const {
  if (p.dimension() != dim_) throw InvalidArgument("step: point dimension does not match system");
  Point q = p;
  advance(q);
  return q;
}

DynamicalSystem make_system(const SystemSpec& spec) { return DynamicalSystem(spec); }

std::vector<Point> orbit(const DynamicalSystem& system, Point start, std::size_t N) {
  if (N == 0) throw InvalidArgument("orbit: N must be positive");
  if (start.dimension() != system.dimension()) throw InvalidArgument("orbit: start dimension mismatch");
  std::vector<Point> out;
  out.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    system.advance(start);
    out.push_back(start);
  }
  return out;
}

Point random_point(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  const CounterRng rng(seed);
  std::vector<Fixed> words(dim);
  std::vector<DigitTail> tails(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    words[i] = rng.bits(index, 2 * i);
    tails[i] = DigitTail{rng.bits(index, 2 * i + 1), 0, true};
  }
  return Point(std::move(words), std::move(tails));
}

namespace {

// Flattened term list for fast evaluation along an orbit.
struct Evaluator {
  std::size_t dim;
  std::vector<std::int64_t> freqs;
  std::vector<Complex> coeffs;

  explicit Evaluator(const Observable& f) : dim(f.dimension()) {
    for (const auto& [m, c] : f.terms()) {
      freqs.insert(freqs.end(), m.begin(), m.end());
      coeffs.push_back(c);
    }
  }

  Complex operator()(const Point& p) const {
    Complex acc{};
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      Fixed phase = 0;
      for (std::size_t i = 0; i < dim; ++i) phase += static_cast<Fixed>(freqs[t * dim + i]) * p.fixed(i);
      acc += coeffs[t] * unit_phase(phase);
    }
    return acc;
  }
};

}  // namespace

OrbitSeries sample_observable(const DynamicalSystem& system, const Observable& f, const Point& start,
                              std::size_t N) {
  if (N == 0) throw InvalidArgument("sample_observable: N must be positive");
  if (f.dimension() != system.dimension())
    throw InvalidArgument("sample_observable: observable dimension does not match system");
  if (start.dimension() != system.dimension())
    throw InvalidArgument("sample_observable: start dimension does not match system");
  const Evaluator eval(f);
  OrbitSeries s;
  s.values.resize(N);
  s.system_id = system.describe();
  s.observable_id = format_observable(f);
  s.start = start;
  Point p = start;
  for (std::size_t n = 0; n < N; ++n) {
    system.advance(p);
    s.values[n] = eval(p);
  }
  return s;
}

Complex integrate(const DynamicalSystem& system, const Observable& f) {
  if (f.dimension() != system.dimension()) throw InvalidArgument("integrate: dimension mismatch");
  return f.coefficient(Frequency(f.dimension(), 0));
}

}  // namespace ergolab

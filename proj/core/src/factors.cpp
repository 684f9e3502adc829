#include "ergolab/errors.hpp"
#include "ergolab/seminorms.hpp"

namespace ergolab {

std::string to_string(FactorTag tag) {
  switch (tag) {
    case FactorTag::Trivial: return "trivial";
    case FactorTag::Kronecker: return "kronecker";
    case FactorTag::FullAlgebra: return "full";
  }
  return "unknown";
}

namespace {

bool only_rotations_and_doublings(const DynamicalSystem& system) {
  for (const auto& b : system.blocks())
    if (b.kind != SystemKind::Rotation && b.kind != SystemKind::Doubling) return false;
  return true;
}

[[noreturn]] void unavailable(const DynamicalSystem& system, FactorTag tag) {
  throw ProjectionUnavailable("no known projection onto the " + to_string(tag) + " factor of " + system.describe());
}

}  // namespace

bool projection_available(const DynamicalSystem& system, FactorTag tag) {
  if (tag != FactorTag::Kronecker) return true;
  switch (system.kind()) {
    case SystemKind::Rotation:
    case SystemKind::Doubling:
    case SystemKind::SkewAnzai:
    case SystemKind::SkewSqrt: return true;
    case SystemKind::Product: return only_rotations_and_doublings(system);
  }
  return false;
}

Observable conditional_expectation(const DynamicalSystem& system, const Observable& f, FactorTag tag) {
  if (f.dimension() != system.dimension()) throw InvalidArgument("conditional_expectation: dimension mismatch");
  const Frequency zero(f.dimension(), 0);
  const auto mean = [&] { return Observable::constant(f.dimension(), f.coefficient(zero)); };
  switch (tag) {
    case FactorTag::Trivial: return mean();
    case FactorTag::FullAlgebra: return f;
    case FactorTag::Kronecker: break;
  }
  switch (system.kind()) {
    case SystemKind::Rotation: return f;
    case SystemKind::Doubling: return mean();
    case SystemKind::SkewAnzai:
    case SystemKind::SkewSqrt: return f.filtered([](const Frequency& m) { return m[1] == 0; });
    case SystemKind::Product: {
      if (!only_rotations_and_doublings(system)) unavailable(system, tag);
      std::vector<std::size_t> doubling_axes;
      for (const auto& b : system.blocks())
        if (b.kind == SystemKind::Doubling) doubling_axes.push_back(b.offset);
      return f.filtered([&](const Frequency& m) {
        for (std::size_t axis : doubling_axes)
          if (m[axis] != 0) return false;
        return true;
      });
    }
  }
  unavailable(system, tag);
}

FactorTag distal_factor(const DynamicalSystem& system, int level) {
  if (level < 0) throw InvalidArgument("distal_factor: level must be nonnegative");
  if (level == 0) return FactorTag::Trivial;
  switch (system.kind()) {
    // A rotation is its own Kronecker factor, so every A_level is everything.
    case SystemKind::Rotation: return level == 1 ? FactorTag::Kronecker : FactorTag::FullAlgebra;
    // Weakly mixing: the Kronecker factor is trivial, and so is every
    // isometric extension built on it.
    case SystemKind::Doubling: return FactorTag::Kronecker;
    // Skew products over a rotation are 2-step distal.
    case SystemKind::SkewAnzai:
    case SystemKind::SkewSqrt: return level == 1 ? FactorTag::Kronecker : FactorTag::FullAlgebra;
    // Rotation x Bernoulli is relatively weakly mixing over its rotation part.
    case SystemKind::Product:
      if (only_rotations_and_doublings(system)) return FactorTag::Kronecker;
      break;
  }
  throw ProjectionUnavailable("no catalog description of A_" + std::to_string(level) + " for " + system.describe());
}

}  // namespace ergolab

#pragma once

// Exact composition of trigonometric polynomials with iterates of catalog
// maps. Rotations multiply each coefficient by a phase, the doubling map
// sends frequency m to 2^h m, and the affine skew (x,y) -> (x+a, y+x) acts
// linearly on frequencies. The square-root skew has no such closed form.

#include <cstdint>
#include <optional>
#include <vector>

#include "ergolab/observable.hpp"
#include "ergolab/systems.hpp"

namespace ergolab {

/// False when some block (SkewSqrt) has no closed-form composition.
bool has_exact_composition(const DynamicalSystem& system);

/// f o T^h as a trigonometric polynomial. Throws ExactArithmeticOverflow when
/// a frequency leaves the int64 range; throws InvalidArgument when the system
/// has no closed-form composition.
Observable compose_iterate(const DynamicalSystem& system, const Observable& f, std::uint64_t h);

/// int conj(f) * f o T^h dmu for h = 0..H, or nullopt when composition is not
/// exact for this system (including frequency overflow).
std::optional<std::vector<Complex>> exact_correlations(const DynamicalSystem& system, const Observable& f,
                                                       std::size_t H);

/// sum_m conj(a_m) b_m, i.e. int conj(a) b dmu.
Complex inner_product(const Observable& a, const Observable& b);

}  // namespace ergolab

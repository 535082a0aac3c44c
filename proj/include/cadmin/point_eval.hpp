#pragma once

#include <vector>

#include "cadmin/algebraic_number.hpp"
#include "cadmin/polynomial.hpp"

namespace cadmin {

/**
 * Exact sign of a polynomial at a point with real algebraic coordinates.
 * The point must supply one coordinate per variable of q. Decides zero
 * exactly (via a univariate value polynomial when interval refinement
 * alone cannot).
 */
int signAt(const Polynomial& q, const std::vector<AlgebraicNumber>& point);

/**
 * The real roots of p(base, y) as a univariate polynomial in its last
 * variable y, over an algebraic base point, in ascending order. Throws
 * CurtainFibreError when p vanishes identically on the fibre and
 * FibreDegenerateError when a projection step degenerates so the fibre
 * polynomial cannot be formed.
 */
std::vector<AlgebraicNumber> isolateFibreRoots(const Polynomial& p,
                                               const std::vector<AlgebraicNumber>& base);

} // namespace cadmin

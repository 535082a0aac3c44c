#pragma once

#include <vector>

#include "cadmin/cad.hpp"
#include "cadmin/family.hpp"
#include "cadmin/label_tree.hpp"

namespace cadmin {

/**
 * The locus of base points whose whole vertical line is contained in a set.
 * For an algebraic set the locus is itself algebraic: a point lies in it
 * exactly when every coefficient (with respect to the last variable) of
 * every defining polynomial vanishes there.
 */
struct CurtainLocus {
    int baseVars = 0;                     // number of base variables (dimension - 1)
    std::vector<Polynomial> generators;   // nonzero coefficient polynomials
    // True when some defining polynomial is identically zero, so every
    // vertical line lies in the set regardless of the generators.
    bool wholeSpace = false;
};

/**
 * Compute the curtain locus of one algebraic set in R^dimension. Constant
 * nonzero coefficients make the locus empty; an identically-zero defining
 * polynomial makes it the whole base space.
 */
CurtainLocus curtainLocus(const SetDefinition& s, int dimension);

/** True iff all generators vanish at the base point (exact signs). */
bool hasCurtainAt(const CurtainLocus& locus, const std::vector<AlgebraicNumber>& point);

/**
 * The limit of an indexed-root bound piece at a boundary point of its base
 * cell.
 *
 * `piece` is a root of a level-(m+1) basis polynomial over the initial base
 * cell `pieceCell` (level m in {1, 2}); `boundaryPoint` is the sample of an
 * initial cell in the closure of `pieceCell`, reached by moving the entry
 * `approachSlot` of `pieceCell` one step toward it (`approachFromBelow` says
 * from which side). The limit always exists when the piece's polynomial does
 * not vanish identically on the fibre over the boundary point; otherwise
 * CurtainAtBoundaryError is thrown. The value is certified exactly: the
 * fibre roots at the boundary point are separated by rationals, the
 * separators are shown sign-invariant on a tail of the approach region, and
 * a single exact probe then pins the band the root converges in.
 * ContinuityUndecidedError is thrown if certification fails within the
 * refinement budget.
 */
ExtendedReal boundaryLimit(const Cad& c, const Index& pieceCell, const IndexedRoot& piece,
                           const Index& boundaryCell,
                           const std::vector<AlgebraicNumber>& boundaryPoint,
                           int approachSlot, bool approachFromBelow);

/**
 * Decide continuity of a merged bound function over the union of the three
 * level-|site| adjacent cells (site with even last entry; the merged base is
 * C_{site-e} ∪ C_site ∪ C_{site+e} lifted to the bound's base level).
 *
 * For every piece boundary -- a base cell over the removed section sitting
 * between base cells over the flanking sectors -- the limit of the sector-side
 * piece must equal the middle piece's value at the boundary cell's sample.
 * One exact check per (boundary cell, adjacent cell) pair decides the whole
 * boundary because the matching root index is constant along a connected
 * boundary cell. Each check first needs a curtain-free witness: at the top
 * level, a family set containing the merged section with no curtain at the
 * boundary sample; below the top level, the piece polynomial itself must not
 * vanish identically on the fibre. A missing witness is recorded as a
 * curtain obstruction (a distinctly marked failed check), never as success.
 *
 * `mergedIndex` is the even index (in c's labeling) of the lowest merged
 * cell: the merged bound is the union of the bounds of mergedIndex,
 * mergedIndex + e_k and mergedIndex + 2e_k where k = |site|.
 */
ContinuityCertificate continuityCheck(const Cad& c, const LabelTree& t, const Family& f,
                                      const Index& site, const Index& mergedIndex);

}  // namespace cadmin

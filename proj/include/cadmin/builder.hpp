#pragma once

#include <memory>
#include <vector>

#include "cadmin/cad.hpp"
#include "cadmin/family.hpp"
#include "cadmin/label_tree.hpp"

namespace cadmin {

/**
 * Projection closure of a family: one squarefree, pairwise-coprime basis per
 * level. The level-k basis polynomials have exactly k variable slots and are
 * canonically sorted, so equal inputs give identical bases.
 */
struct ProjectionBasis {
    int dimension = 1;
    std::vector<std::vector<Polynomial>> perLevel;  // perLevel[k-1]: level-k basis

    const std::vector<Polynomial>& level(int k) const {
        return perLevel[static_cast<std::size_t>(k - 1)];
    }
};

/**
 * Build the projection closure for a family's polynomials (plus optional
 * extra top-level polynomials forced into the basis, e.g. to pre-refine the
 * decomposition). Projection collects, per polynomial, every coefficient
 * with respect to the distinguished (last) variable together with the
 * principal subresultant coefficients of its reducta against their
 * derivatives, and of reducta pairs from distinct polynomials.
 */
ProjectionBasis buildProjectionBasis(const Family& f,
                                     const std::vector<Polynomial>& extra = {});

struct LiftOptions {
    // Build the stacks of one level concurrently over its base cells. The
    // result is identical to the serial construction: stacks are pure
    // functions of (base sample, level basis) and are merged in index order.
    bool parallel = false;
};

/**
 * Lift the basis into a full decomposition: level by level, one stack of
 * 2u+1 alternating sector/section cells over every base cell, sections at
 * the real roots of the level basis over the base sample. Basis polynomials
 * that vanish identically over a base point contribute no sections there.
 */
Cad liftCad(const ProjectionBasis& basis, const LiftOptions& opts = {});

/**
 * Membership labels for every cell: leaf bit i is set iff every polynomial
 * of the i-th set vanishes at the cell's sample point; internal labels are
 * the interned tuples of their children's labels.
 */
LabelTree labelCells(const Cad& c, const Family& f,
                     std::shared_ptr<LabelPool> pool = nullptr);

/**
 * True iff the decomposition is adapted to the family: the stored labels
 * agree with recomputed sample membership, and each set's zero locus is a
 * union of cells (every defining polynomial splits over the top-level basis
 * up to a factor with empty real zero set).
 */
bool adaptednessCheck(const Cad& c, const LabelTree& t, const Family& f);

}  // namespace cadmin

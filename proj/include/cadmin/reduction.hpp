#pragma once

#include <optional>
#include <vector>

#include "cadmin/cad.hpp"
#include "cadmin/family.hpp"
#include "cadmin/label_tree.hpp"

#include "json.hpp"

namespace cadmin {

/**
 * Classification of an index relative to an even site `a` of length k.
 * For fixed `a` the three classes partition all indices:
 *   S: the k-prefix equals a;
 *   N: the k-prefix equals a + m*e_k for some m >= 1;
 *   F: everything else (including all indices shorter than k).
 */
enum class IndexClass { S, N, F };

/** First k entries of i; indices shorter than k are returned unchanged. */
Index prefixMap(int k, const Index& i);

IndexClass classify(const Index& a, const Index& i);

/**
 * The relabelling map that collapses the site: subtract e_k on the S class,
 * 2*e_k on the N class, and fix the F class pointwise (k = |a|).
 */
Index relabel(const Index& a, const Index& i);

/**
 * Preimage of i under the relabelling, in increasing order:
 * {i, i+e_k, i+2e_k} when i is in S_{a-e_k}; {i+2e_k} when i is in
 * S_a or N_a; {i} otherwise.
 */
std::vector<Index> relabelFibre(const Index& a, const Index& i);

struct ReductionSite {
    Index node;

    int level() const { return node.length(); }

    bool operator==(const ReductionSite& o) const { return node == o.node; }
    // Lexicographic in (level, node); drives deterministic exploration.
    bool operator<(const ReductionSite& o) const {
        if (node.length() != o.node.length()) return node.length() < o.node.length();
        return node < o.node;
    }
};

/**
 * True iff removing the even node `a` keeps the tree consistent: the labels
 * of a - e_k, a and a + e_k must be equal as whole nested tuples. Throws
 * InvalidSiteError when `a` is odd, absent from the tree, or has no
 * flanking siblings.
 */
bool treeReductionApplicable(const LabelTree& t, const Index& a);

/**
 * The reduced tree: nodes relabelled, leaf labels transported along the
 * relabelling (well defined by applicability), internal labels recomputed
 * bottom-up. Throws InvalidSiteError when not applicable.
 */
LabelTree applyTreeReduction(const LabelTree& t, const Index& a);

/**
 * All applicable sites, in lexicographic order of (level, index).
 */
std::vector<ReductionSite> enumerateSites(const Cad& c, const LabelTree& t);

/**
 * Which merged bounds a lift check inspects. The restricted mode checks the
 * merged bounds only where three pieces actually join (indices whose
 * k-prefix equals a - e_k); the full mode additionally records the vacuous
 * certificates of every other even index above the site, whose bound is a
 * single already-continuous piece. The two modes always agree.
 */
enum class LiftCheckMode { Restricted, Full };

struct LiftDecision {
    bool lifts = false;
    // First merged index whose certificate failed (set iff !lifts).
    std::optional<Index> witness;
    // Inspected merged sections in (level, index) order, with one
    // certificate each (certificates[i] belongs to mergedSections[i]).
    std::vector<Index> mergedSections;
    std::vector<ContinuityCertificate> certificates;
};

/**
 * Decide whether the tree reduction at `a` lifts to a decomposition
 * reduction: every merged section bound (the union of the bounds at
 * I, I+e_k, I+2e_k for even I with k-prefix a - e_k) must be continuous.
 * Sites at the last level always lift: nothing is stacked above them, so no
 * bound unions arise. Throws InvalidSiteError when the tree reduction is
 * not applicable, and propagates ContinuityUndecidedError from checks that
 * exhaust their budget.
 */
LiftDecision liftCheck(const Cad& c, const LabelTree& t, const Family& f, const Index& a,
                       LiftCheckMode mode = LiftCheckMode::Restricted);

struct ReducedCad {
    Cad cad;
    LabelTree tree;
};

/**
 * The decomposition reduction at site `a`: the three level-k cells at
 * a - e_k, a, a + e_k merge into one sector, every cylinder above them
 * merges fibre-wise, merged section bounds store their pieces with the
 * continuity certificates from the lift check, and sectors share their
 * adjacent sections' bounds. Indices are relabelled exactly as in the tree
 * reduction. Throws LiftFailureError when the lift check fails.
 */
ReducedCad applyCadReduction(const Cad& c, const LabelTree& t, const Family& f,
                             const Index& a);

/** One applied reduction, for serialized traces; cell counts are totals
    across all levels. */
struct TraceEntry {
    Index site;
    int level = 1;
    int cellsBefore = 0;
    int cellsAfter = 0;
};

nlohmann::json traceToJson(const std::vector<TraceEntry>& trace);

/**
 * Apply last-level reductions (which always lift) at the lexicographically
 * first applicable site until none remain. Idempotent; appends the applied
 * steps to `trace` when given.
 */
ReducedCad normalizeLastLevel(const Cad& c, const LabelTree& t, const Family& f,
                              std::vector<TraceEntry>* trace = nullptr);

}  // namespace cadmin

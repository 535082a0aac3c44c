#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cadmin/builder.hpp"
#include "cadmin/cad.hpp"
#include "cadmin/family.hpp"
#include "cadmin/label_tree.hpp"
#include "cadmin/reduction.hpp"

namespace cadmin {

enum class SearchMode { Greedy, Exhaustive };

struct ProblemOptions {
    SearchMode mode = SearchMode::Greedy;
    // Skip the structural closed-and-curtained admission check. Zero sets of
    // polynomials always pass it, so the flag only matters if other set modes
    // are ever added.
    bool assumeClosedCurtained = false;
    // Node cap for exhaustive exploration; exceeding it yields a partial
    // graph flagged incomplete. Desk-scale instances stay far below it.
    int budgetNodes = 10000;
    // Build stacks and expand graph frontiers concurrently. Results are
    // identical to the serial run: all merges happen in deterministic order.
    bool parallel = false;
};

/**
 * One minimization problem: a family of algebraic sets in R^dimension plus
 * optional extra basis polynomials. Extra basis polynomials are forced into
 * the projection basis but belong to no set, so they contribute cells without
 * affecting membership labels (the standard way to seed a decomposition with
 * spurious sections that reductions should remove).
 */
struct Problem {
    Family family;
    std::vector<Polynomial> extraBasis;
    std::vector<std::string> variables;  // size == family.dimension
    ProblemOptions options;
};

/**
 * Parse a problem from its JSON description:
 *
 *   {
 *     "dimension": 2,
 *     "variables": ["x", "y"],
 *     "sets": [
 *       {"name": "circle",
 *        "polynomials": [[[[2,0],"1"], [[0,2],"1"], [[0,0],"-1"]]]},
 *       {"name": "axis", "basisOnly": true,
 *        "polynomials": [[[[1,0],"1"]]]}
 *     ],
 *     "options": {"mode": "greedy", "budgetNodes": 10000,
 *                 "assumeClosedCurtained": false, "parallel": false}
 *   }
 *
 * Each polynomial is a list of terms, each term a pair of an exponent vector
 * (one entry per declared variable) and a decimal rational coefficient
 * string. A set marked "basisOnly" contributes its polynomials to the
 * projection basis but is dropped from the family. Unknown keys and malformed
 * values raise ParseError.
 */
Problem problemFromJson(const nlohmann::json& j);

/** Read and parse a problem file; file and JSON errors become ParseError. */
Problem problemFromFile(const std::string& path);

/**
 * Structural admission check: every input set must be closed and curtained.
 * Common zero sets of polynomials always are, so every currently accepted
 * problem passes; the check exists to reject other set modes if they are
 * ever added. Skipped when options.assumeClosedCurtained is set.
 */
void verifyCurtainedInput(const Problem& p);

struct GreedyResult {
    Cad initial;          // as built, before any reduction
    LabelTree initialTree;
    Cad reduced;          // the reached normal form
    LabelTree tree;
    std::vector<TraceEntry> trace;
};

/**
 * Build the decomposition for the problem, label it, normalize the last
 * level, then repeatedly apply the lexicographically first site whose
 * reduction lifts until none remains. ContinuityUndecidedError (annotated
 * with the offending site) aborts the run.
 */
GreedyResult runGreedy(const Problem& p);

struct GraphEdge {
    int from = 0;
    Index site;
    int to = 0;
};

struct GraphNode {
    int id = 0;
    Cad cad;
    LabelTree tree;
    std::string key;  // canonicalKey(cad); node identity in the graph
};

/**
 * The closure of all lifting reductions from the normalized initial
 * decomposition. Node ids are breadth-first discovery positions and are
 * deterministic (independent of the parallel option). `normalForms` lists
 * the expanded nodes admitting no lifting reduction; when the node budget
 * truncates exploration, `complete` is false and unexpanded nodes are
 * classified neither way.
 */
struct ReductionGraph {
    std::vector<GraphNode> nodes;  // nodes[i].id == i
    std::vector<GraphEdge> edges;
    std::vector<int> normalForms;
    int initialNode = 0;
    bool complete = true;
};

/** Breadth-first exploration of every lifting reduction, within the budget. */
ReductionGraph runExhaustive(const Problem& p);

enum class ReportFormat { Text, Json, Dot };

/**
 * Render a result for humans or tools. Text gives per-level cell counts and
 * the reduction trace; Json embeds the full decomposition serialization
 * (round-trippable through cadFromJson); Dot draws the reduction chain or
 * graph with cell-count node labels, site edge labels, and doubled borders
 * on normal forms.
 */
std::string reportGreedy(const GreedyResult& r, ReportFormat fmt);
std::string reportGraph(const ReductionGraph& g, ReportFormat fmt);

}  // namespace cadmin

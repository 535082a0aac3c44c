#include "cadmin/pipeline.hpp"

#include <algorithm>
#include <cstddef>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "cadmin/errors.hpp"

namespace cadmin {

namespace {

void requireObject(const nlohmann::json& j, const char* where) {
    if (!j.is_object()) throw ParseError(std::string(where) + " must be a JSON object");
}

void requireKeys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                 const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known)
            throw ParseError("unknown key '" + it.key() + "' in " + where);
    }
}

SearchMode parseMode(const std::string& s) {
    if (s == "greedy") return SearchMode::Greedy;
    if (s == "exhaustive") return SearchMode::Exhaustive;
    throw ParseError("mode must be \"greedy\" or \"exhaustive\", got \"" + s + "\"");
}

ProblemOptions parseOptions(const nlohmann::json& j) {
    ProblemOptions o;
    requireObject(j, "options");
    requireKeys(j, {"mode", "assumeClosedCurtained", "budgetNodes", "parallel"}, "options");
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) throw ParseError("options.mode must be a string");
        o.mode = parseMode(j["mode"].get<std::string>());
    }
    if (j.contains("assumeClosedCurtained")) {
        if (!j["assumeClosedCurtained"].is_boolean())
            throw ParseError("options.assumeClosedCurtained must be a boolean");
        o.assumeClosedCurtained = j["assumeClosedCurtained"].get<bool>();
    }
    if (j.contains("budgetNodes")) {
        if (!j["budgetNodes"].is_number_integer() || j["budgetNodes"].get<int>() < 1)
            throw ParseError("options.budgetNodes must be a positive integer");
        o.budgetNodes = j["budgetNodes"].get<int>();
    }
    if (j.contains("parallel")) {
        if (!j["parallel"].is_boolean()) throw ParseError("options.parallel must be a boolean");
        o.parallel = j["parallel"].get<bool>();
    }
    return o;
}

}  // namespace

Problem problemFromJson(const nlohmann::json& j) {
    try {
        requireObject(j, "problem");
        requireKeys(j, {"dimension", "variables", "sets", "options"}, "problem");

        if (!j.contains("dimension") || !j["dimension"].is_number_integer())
            throw ParseError("problem needs an integer \"dimension\"");
        const int dim = j["dimension"].get<int>();
        if (dim < 1 || dim > 3) throw ParseError("dimension must be 1, 2 or 3");

        if (!j.contains("variables") || !j["variables"].is_array())
            throw ParseError("problem needs a \"variables\" array");
        std::vector<std::string> vars;
        for (const auto& v : j["variables"]) {
            if (!v.is_string()) throw ParseError("variable names must be strings");
            vars.push_back(v.get<std::string>());
        }
        if (static_cast<int>(vars.size()) != dim)
            throw ParseError("variable count must equal the dimension");

        if (!j.contains("sets") || !j["sets"].is_array() || j["sets"].empty())
            throw ParseError("problem needs a nonempty \"sets\" array");

        Problem p;
        p.family.dimension = dim;
        p.variables = std::move(vars);
        for (const auto& js : j["sets"]) {
            requireObject(js, "set");
            requireKeys(js, {"name", "polynomials", "basisOnly"}, "set");
            if (!js.contains("name") || !js["name"].is_string())
                throw ParseError("every set needs a string \"name\"");
            SetDefinition s;
            s.name = js["name"].get<std::string>();
            if (!js.contains("polynomials") || !js["polynomials"].is_array() ||
                js["polynomials"].empty())
                throw ParseError("set '" + s.name + "' needs a nonempty \"polynomials\" array");
            for (const auto& jp : js["polynomials"]) {
                Polynomial q = polynomialFromJson(jp, dim);
                if (q.isZero())
                    throw ParseError("set '" + s.name + "' contains the zero polynomial");
                s.polynomials.push_back(std::move(q));
            }
            bool basisOnly = false;
            if (js.contains("basisOnly")) {
                if (!js["basisOnly"].is_boolean())
                    throw ParseError("basisOnly must be a boolean");
                basisOnly = js["basisOnly"].get<bool>();
            }
            if (basisOnly)
                for (const Polynomial& q : s.polynomials) p.extraBasis.push_back(q);
            else
                p.family.sets.push_back(std::move(s));
        }
        if (p.family.sets.empty())
            throw ParseError("every set is basisOnly; the family is empty");
        if (j.contains("options")) p.options = parseOptions(j["options"]);

        p.family.validate();
        return p;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed problem JSON: ") + e.what());
    }
}

Problem problemFromFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return problemFromJson(j);
}

void verifyCurtainedInput(const Problem& p) {
    // Common zero sets of polynomials are always closed, and every vertical
    // line meets them in finitely many points or lies inside them entirely,
    // so the admission check only has to reject other set modes.
    for (const SetDefinition& s : p.family.sets)
        if (s.mode != SetMode::Algebraic)
            throw Error("set '" + s.name + "' is not structurally closed and curtained");
}

namespace {

struct Built {
    Cad cad;
    LabelTree tree;
};

Built buildInitial(const Problem& p) {
    p.family.validate();
    if (!p.variables.empty() &&
        static_cast<int>(p.variables.size()) != p.family.dimension)
        throw Error("variable name count must equal the dimension");
    if (!p.options.assumeClosedCurtained) verifyCurtainedInput(p);
    ProjectionBasis basis = buildProjectionBasis(p.family, p.extraBasis);
    LiftOptions lift;
    lift.parallel = p.options.parallel;
    Cad c = liftCad(basis, lift);
    LabelTree t = labelCells(c, p.family);
    return Built{std::move(c), std::move(t)};
}

LiftDecision checkedLiftCheck(const Cad& c, const LabelTree& t, const Family& f,
                              const Index& site) {
    try {
        return liftCheck(c, t, f, site);
    } catch (const ContinuityUndecidedError& e) {
        throw ContinuityUndecidedError(std::string(e.what()) + " [site " + site.str() + "]");
    }
}

}  // namespace

GreedyResult runGreedy(const Problem& p) {
    Built b = buildInitial(p);
    GreedyResult r;
    r.initial = b.cad;
    r.initialTree = b.tree;
    ReducedCad cur = normalizeLastLevel(b.cad, b.tree, p.family, &r.trace);
    for (;;) {
        std::vector<ReductionSite> sites = enumerateSites(cur.cad, cur.tree);
        std::sort(sites.begin(), sites.end());
        bool applied = false;
        for (const ReductionSite& s : sites) {
            if (!checkedLiftCheck(cur.cad, cur.tree, p.family, s.node).lifts) continue;
            const int before = cur.cad.cellCount();
            ReducedCad red = applyCadReduction(cur.cad, cur.tree, p.family, s.node);
            r.trace.push_back(TraceEntry{s.node, s.level(), before, red.cad.cellCount()});
            cur = normalizeLastLevel(red.cad, red.tree, p.family, &r.trace);
            applied = true;
            break;
        }
        if (!applied) break;
    }
    r.reduced = std::move(cur.cad);
    r.tree = std::move(cur.tree);
    return r;
}

namespace {

struct Expansion {
    Index site;
    Cad cad;
    LabelTree tree;
    std::string key;
};

std::vector<Expansion> expandNode(const Cad& c, const LabelTree& t, const Family& f) {
    std::vector<Expansion> out;
    std::vector<ReductionSite> sites = enumerateSites(c, t);
    std::sort(sites.begin(), sites.end());
    for (const ReductionSite& s : sites) {
        if (!checkedLiftCheck(c, t, f, s.node).lifts) continue;
        ReducedCad red = applyCadReduction(c, t, f, s.node);
        ReducedCad norm = normalizeLastLevel(red.cad, red.tree, f);
        std::string key = canonicalKey(norm.cad);
        out.push_back(
            Expansion{s.node, std::move(norm.cad), std::move(norm.tree), std::move(key)});
    }
    return out;
}

}  // namespace

ReductionGraph runExhaustive(const Problem& p) {
    if (p.options.budgetNodes < 1) throw Error("node budget must be positive");
    Built b = buildInitial(p);
    ReducedCad start = normalizeLastLevel(b.cad, b.tree, p.family);

    ReductionGraph g;
    std::map<std::string, int> byKey;
    std::string startKey = canonicalKey(start.cad);
    byKey.emplace(startKey, 0);
    g.nodes.push_back(GraphNode{0, std::move(start.cad), std::move(start.tree),
                                std::move(startKey)});
    g.initialNode = 0;

    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        // Expand the whole frontier first (concurrently when asked); the node
        // map is touched only in the serialized merge below, so ids depend on
        // (frontier order, site order) alone, never on thread scheduling.
        std::vector<std::vector<Expansion>> results(frontier.size());
        std::exception_ptr fault;
#ifdef CADMIN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (p.options.parallel)
#endif
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            try {
                const GraphNode& nd = g.nodes[static_cast<std::size_t>(frontier[i])];
                results[i] = expandNode(nd.cad, nd.tree, p.family);
            } catch (...) {
#ifdef CADMIN_HAVE_OPENMP
#pragma omp critical
#endif
                if (!fault) fault = std::current_exception();
            }
        }
        if (fault) std::rethrow_exception(fault);

        std::vector<int> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            const int from = frontier[i];
            const int fromCells = g.nodes[static_cast<std::size_t>(from)].cad.cellCount();
            if (results[i].empty()) {
                g.normalForms.push_back(from);
                continue;
            }
            for (Expansion& e : results[i]) {
                if (e.cad.cellCount() >= fromCells)
                    throw StructureError("reduction did not decrease the cell count");
                auto it = byKey.find(e.key);
                int to;
                if (it != byKey.end()) {
                    to = it->second;
                } else if (static_cast<int>(g.nodes.size()) >= p.options.budgetNodes) {
                    g.complete = false;  // drop the expansion: its target is over budget
                    continue;
                } else {
                    to = static_cast<int>(g.nodes.size());
                    byKey.emplace(e.key, to);
                    g.nodes.push_back(
                        GraphNode{to, std::move(e.cad), std::move(e.tree), std::move(e.key)});
                    next.push_back(to);
                }
                g.edges.push_back(GraphEdge{from, e.site, to});
            }
        }
        frontier = std::move(next);
    }
    return g;
}

namespace {

const char* plural(int n) { return n == 1 ? "" : "s"; }

void levelLinesInto(std::ostream& os, const Cad& c, const char* indent) {
    for (int k = 1; k <= c.dimension; ++k)
        os << indent << "level " << k << ": " << c.cellCount(k) << " cells\n";
}

nlohmann::json levelCounts(const Cad& c) {
    nlohmann::json a = nlohmann::json::array();
    for (int k = 1; k <= c.dimension; ++k) a.push_back(c.cellCount(k));
    return a;
}

void traceLinesInto(std::ostream& os, const std::vector<TraceEntry>& trace) {
    os << "trace: " << trace.size() << " step" << plural(static_cast<int>(trace.size()))
       << "\n";
    int n = 0;
    for (const TraceEntry& t : trace)
        os << "  " << ++n << ". site " << t.site.str() << " at level " << t.level << ": "
           << t.cellsBefore << " -> " << t.cellsAfter << " cells\n";
}

std::string greedyDot(const GreedyResult& r) {
    std::ostringstream os;
    os << "digraph reduction {\n  rankdir=LR;\n";
    std::vector<int> counts;
    counts.push_back(r.trace.empty() ? r.reduced.cellCount() : r.trace.front().cellsBefore);
    for (const TraceEntry& t : r.trace) counts.push_back(t.cellsAfter);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        os << "  n" << i << " [label=\"" << counts[i] << " cells\"";
        if (i + 1 == counts.size()) os << ", peripheries=2";
        os << "];\n";
    }
    for (std::size_t i = 0; i < r.trace.size(); ++i)
        os << "  n" << i << " -> n" << i + 1 << " [label=\"" << r.trace[i].site.str()
           << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string graphDot(const ReductionGraph& g) {
    std::ostringstream os;
    os << "digraph reduction {\n  rankdir=LR;\n";
    if (!g.complete) os << "  label=\"incomplete (node budget exhausted)\";\n";
    for (const GraphNode& n : g.nodes) {
        const bool nf =
            std::find(g.normalForms.begin(), g.normalForms.end(), n.id) != g.normalForms.end();
        os << "  n" << n.id << " [label=\"" << n.cad.cellCount() << " cells\"";
        if (nf) os << ", peripheries=2";
        os << "];\n";
    }
    for (const GraphEdge& e : g.edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.site.str() << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace

std::string reportGreedy(const GreedyResult& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Text: {
            std::ostringstream os;
            os << "normal form: " << r.reduced.cellCount() << " cells (initial "
               << r.initial.cellCount() << ")\n";
            levelLinesInto(os, r.reduced, "");
            traceLinesInto(os, r.trace);
            return os.str();
        }
        case ReportFormat::Json: {
            nlohmann::json j;
            j["initialCells"] = r.initial.cellCount();
            j["reducedCells"] = r.reduced.cellCount();
            j["initialLevels"] = levelCounts(r.initial);
            j["levels"] = levelCounts(r.reduced);
            j["trace"] = traceToJson(r.trace);
            j["initial"] = cadToJson(r.initial);
            j["reduced"] = cadToJson(r.reduced);
            return j.dump(2) + "\n";
        }
        case ReportFormat::Dot:
            return greedyDot(r);
    }
    throw Error("unknown report format");
}

std::string reportGraph(const ReductionGraph& g, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Text: {
            std::ostringstream os;
            os << "reduction graph: " << g.nodes.size() << " node"
               << plural(static_cast<int>(g.nodes.size())) << ", " << g.edges.size() << " edge"
               << plural(static_cast<int>(g.edges.size())) << ", " << g.normalForms.size()
               << " normal form" << plural(static_cast<int>(g.normalForms.size()))
               << (g.complete ? "" : ", INCOMPLETE (node budget exhausted)") << "\n";
            for (const GraphNode& n : g.nodes) {
                const bool nf = std::find(g.normalForms.begin(), g.normalForms.end(), n.id) !=
                                g.normalForms.end();
                os << "node " << n.id << ": " << n.cad.cellCount() << " cells";
                if (n.id == g.initialNode) os << " (initial)";
                if (nf) os << " (normal form)";
                os << "\n";
                if (nf) levelLinesInto(os, n.cad, "  ");
            }
            if (!g.edges.empty()) {
                os << "edges:\n";
                for (const GraphEdge& e : g.edges)
                    os << "  " << e.from << " -> " << e.to << "  site " << e.site.str()
                       << " at level " << e.site.length() << "\n";
            }
            return os.str();
        }
        case ReportFormat::Json: {
            nlohmann::json j;
            j["complete"] = g.complete;
            j["initialNode"] = g.initialNode;
            j["normalForms"] = g.normalForms;
            j["nodes"] = nlohmann::json::array();
            for (const GraphNode& n : g.nodes) {
                nlohmann::json jn;
                jn["id"] = n.id;
                jn["cells"] = n.cad.cellCount();
                jn["levels"] = levelCounts(n.cad);
                jn["normalForm"] = std::find(g.normalForms.begin(), g.normalForms.end(),
                                             n.id) != g.normalForms.end();
                jn["cad"] = cadToJson(n.cad);
                j["nodes"].push_back(std::move(jn));
            }
            j["edges"] = nlohmann::json::array();
            for (const GraphEdge& e : g.edges) {
                nlohmann::json je;
                je["from"] = e.from;
                je["to"] = e.to;
                je["site"] = e.site.str();
                je["level"] = e.site.length();
                j["edges"].push_back(std::move(je));
            }
            return j.dump(2) + "\n";
        }
        case ReportFormat::Dot:
            return graphDot(g);
    }
    throw Error("unknown report format");
}

}  // namespace cadmin

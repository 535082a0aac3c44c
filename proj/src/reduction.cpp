#include "cadmin/reduction.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <utility>

#include "cadmin/errors.hpp"
#include "cadmin/geometry.hpp"

namespace cadmin {

namespace {

// The flanking sector indices of an even site.
Index leftSibling(const Index& a) { return a.shifted(a.length() - 1, -1); }
Index rightSibling(const Index& a) { return a.shifted(a.length() - 1, +1); }

}  // namespace

Index prefixMap(int k, const Index& i) {
    if (k < 0) throw Error("prefix map needs a nonnegative level");
    return i.prefix(k);
}

IndexClass classify(const Index& a, const Index& i) {
    const int k = a.length();
    if (k < 1) throw Error("classification site must be nonempty");
    if (i.length() < k) return IndexClass::F;
    const Index p = prefixMap(k, i);
    if (p == a) return IndexClass::S;
    if (p.prefix(k - 1) == a.prefix(k - 1) && p.entry(k - 1) > a.entry(k - 1))
        return IndexClass::N;
    return IndexClass::F;
}

Index relabel(const Index& a, const Index& i) {
    const int k = a.length();
    switch (classify(a, i)) {
        case IndexClass::S: return i.shifted(k - 1, -1);
        case IndexClass::N: return i.shifted(k - 1, -2);
        case IndexClass::F: return i;
    }
    throw StructureError("unreachable index class");
}

std::vector<Index> relabelFibre(const Index& a, const Index& i) {
    const int k = a.length();
    if (i.length() >= k && prefixMap(k, i) == leftSibling(a))
        return {i, i.shifted(k - 1, +1), i.shifted(k - 1, +2)};
    const IndexClass cls = classify(a, i);
    if (cls == IndexClass::S || cls == IndexClass::N) return {i.shifted(k - 1, +2)};
    return {i};
}

bool treeReductionApplicable(const LabelTree& t, const Index& a) {
    if (a.isRoot() || a.isOdd()) throw InvalidSiteError("invalid site");
    if (!t.hasNode(a) || !t.hasNode(leftSibling(a)) || !t.hasNode(rightSibling(a)))
        throw InvalidSiteError("invalid site");
    return t.label(leftSibling(a)) == t.label(a) && t.label(a) == t.label(rightSibling(a));
}

LabelTree applyTreeReduction(const LabelTree& t, const Index& a) {
    if (!treeReductionApplicable(t, a)) throw InvalidSiteError("not applicable");

    const int n = t.dimension;
    std::map<Index, std::vector<bool>> leafBits;
    for (const auto& [idx, label] : t.labels) {
        if (idx.length() != n) continue;
        const Index nidx = relabel(a, idx);
        const std::vector<bool>& bits = t.leafBits(idx);
        auto [it, inserted] = leafBits.emplace(nidx, bits);
        if (!inserted && it->second != bits)
            throw StructureError("leaf label transport collision at " + nidx.str());
    }

    const Index site = a.parent();
    std::map<Index, int> stacks;
    for (const auto& [idx, u] : t.stackSizes) {
        const Index nidx = relabel(a, idx);
        const int nu = (idx == site) ? u - 1 : u;
        auto [it, inserted] = stacks.emplace(nidx, nu);
        if (!inserted && it->second != nu)
            throw StructureError("stack size transport collision at " + nidx.str());
    }

    return labelTreeFromLeaves(n, t.setCount, stacks, leafBits, t.pool);
}

std::vector<ReductionSite> enumerateSites(const Cad& c, const LabelTree& t) {
    std::vector<ReductionSite> out;
    for (const auto& [idx, label] : t.labels) {
        (void)label;
        if (idx.isRoot() || idx.isOdd()) continue;
        if (!t.hasNode(leftSibling(idx)) || !t.hasNode(rightSibling(idx))) continue;
        if (treeReductionApplicable(t, idx)) out.push_back(ReductionSite{idx});
    }
    std::sort(out.begin(), out.end());
    (void)c;
    return out;
}

LiftDecision liftCheck(const Cad& c, const LabelTree& t, const Family& f, const Index& a,
                       LiftCheckMode mode) {
    if (!treeReductionApplicable(t, a)) throw InvalidSiteError("not applicable");

    LiftDecision d;
    d.lifts = true;
    const int k = a.length();
    const int n = c.dimension;
    if (k == n) return d;  // nothing stacked above the site

    const Index left = leftSibling(a);
    for (int l = k + 1; l <= n; ++l) {
        for (const auto& [idx, cell] : c.level(l)) {
            (void)cell;
            if (idx.isOdd()) continue;
            if (prefixMap(k, idx) == left) {
                ContinuityCertificate cert = continuityCheck(c, t, f, a, idx);
                d.mergedSections.push_back(idx);
                d.certificates.push_back(cert);
                if (!cert.verdict()) {
                    d.lifts = false;
                    d.witness = idx;
                    return d;
                }
            } else if (mode == LiftCheckMode::Full) {
                const IndexClass cls = classify(a, idx);
                if (cls == IndexClass::S) continue;  // image lives at idx - e_k
                if (cls == IndexClass::N && prefixMap(k, idx) == rightSibling(a))
                    continue;  // image lives at idx - 2e_k
                // The reduced bound at this index coincides with a single
                // existing bound of c, which is continuous because c is a
                // valid decomposition: record the vacuous certificate.
                ContinuityCertificate vac;
                vac.site = a;
                d.mergedSections.push_back(relabel(a, idx));
                d.certificates.push_back(vac);
            }
        }
    }
    return d;
}

namespace {

std::vector<Index> mergedFromUnion(const Cell& x, const Cell& y, const Cell& z) {
    std::vector<Index> out = x.mergedFrom;
    out.insert(out.end(), y.mergedFrom.begin(), y.mergedFrom.end());
    out.insert(out.end(), z.mergedFrom.begin(), z.mergedFrom.end());
    std::sort(out.begin(), out.end());
    return out;
}

BoundFunction mergeBounds(const BoundFunction& x, const BoundFunction& y,
                          const BoundFunction& z) {
    BoundFunction out;
    out.pieces = x.pieces;
    for (const auto& [key, piece] : y.pieces) {
        if (!out.pieces.emplace(key, piece).second)
            throw StructureError("merged bound pieces overlap at " + key.str());
    }
    for (const auto& [key, piece] : z.pieces) {
        if (!out.pieces.emplace(key, piece).second)
            throw StructureError("merged bound pieces overlap at " + key.str());
    }
    return out;
}

}  // namespace

ReducedCad applyCadReduction(const Cad& c, const LabelTree& t, const Family& f,
                             const Index& a) {
    const LiftDecision d = liftCheck(c, t, f, a, LiftCheckMode::Restricted);
    if (!d.lifts)
        throw LiftFailureError("lift failure at merged section " +
                               (d.witness ? d.witness->str() : std::string("?")));
    std::map<Index, ContinuityCertificate> certOf;
    for (std::size_t i = 0; i < d.mergedSections.size(); ++i)
        certOf.emplace(d.mergedSections[i], d.certificates[i]);

    const int k = a.length();
    const int n = c.dimension;
    const int slot = k - 1;
    const Index left = leftSibling(a);
    const Index right = rightSibling(a);

    Cad out;
    out.dimension = n;
    out.basis = c.basis;
    out.initialRef = c.initialRef ? c.initialRef : std::make_shared<const Cad>(c);
    for (const auto& [idx, u] : c.stackSizes)
        out.stackSizes[relabel(a, idx)] = (idx == a.parent()) ? u - 1 : u;
    out.levels.resize(static_cast<std::size_t>(n));

    for (int l = 1; l <= n; ++l) {
        auto& target = out.levels[static_cast<std::size_t>(l - 1)];
        if (l < k) {
            target = c.level(l);
            continue;
        }
        if (l == k) {
            for (const auto& [idx, cell] : c.level(l)) {
                if (idx == a || idx == right) continue;
                if (idx == left) {
                    Cell m = cell;  // keeps the left sector's sample and lower bound
                    m.upper = c.cell(right).upper;
                    m.mergedFrom = mergedFromUnion(cell, c.cell(a), c.cell(right));
                    target.emplace(idx, std::move(m));
                } else {
                    Cell m = cell;
                    m.index = relabel(a, idx);
                    target.emplace(m.index, std::move(m));
                }
            }
            continue;
        }
        // l > k: merge the cylinders fibre-wise.
        for (const auto& [idx, cell] : c.level(l)) {
            const IndexClass cls = classify(a, idx);
            if (cls == IndexClass::S) continue;  // absorbed into idx - e_k
            if (cls == IndexClass::N && prefixMap(k, idx) == right)
                continue;  // absorbed into idx - 2e_k
            if (prefixMap(k, idx) == left) {
                const Cell& mid = c.cell(idx.shifted(slot, +1));
                const Cell& far = c.cell(idx.shifted(slot, +2));
                if (mid.kind != cell.kind || far.kind != cell.kind)
                    throw StructureError("merged cells disagree on kind at " + idx.str());
                Cell m;
                m.index = idx;
                m.kind = cell.kind;
                m.baseIndex = cell.baseIndex;
                m.sample = cell.sample;
                m.sampleFrom = cell.sampleFrom;
                m.mergedFrom = mergedFromUnion(cell, mid, far);
                if (cell.kind == CellKind::Section) {
                    m.bound = mergeBounds(*cell.bound, *mid.bound, *far.bound);
                    auto it = certOf.find(idx);
                    if (it == certOf.end())
                        throw StructureError("missing certificate for merged section " +
                                             idx.str());
                    m.bound->certificate = it->second;
                }
                target.emplace(idx, std::move(m));
            } else {
                Cell m = cell;
                m.index = relabel(a, idx);
                m.baseIndex = relabel(a, cell.baseIndex);
                target.emplace(m.index, std::move(m));
            }
        }
        // Second pass: sectors over merged bases share their neighbouring
        // sections' merged bounds.
        for (auto& [idx, cell] : target) {
            if (cell.kind != CellKind::Sector) continue;
            if (prefixMap(k, idx) != left) continue;
            const Index base = cell.baseIndex;
            const int u = out.stackSizes.at(base);
            const int j = idx.last();
            cell.lower = (j > 1) ? std::optional<BoundFunction>(
                                       target.at(base.child(j - 1)).bound.value())
                                 : std::nullopt;
            cell.upper = (j < 2 * u + 1) ? std::optional<BoundFunction>(
                                               target.at(base.child(j + 1)).bound.value())
                                         : std::nullopt;
        }
    }

    return ReducedCad{std::move(out), applyTreeReduction(t, a)};
}

nlohmann::json traceToJson(const std::vector<TraceEntry>& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TraceEntry& e : trace) {
        arr.push_back({{"site", e.site.str()},
                       {"level", e.level},
                       {"cellsBefore", e.cellsBefore},
                       {"cellsAfter", e.cellsAfter}});
    }
    return arr;
}

ReducedCad normalizeLastLevel(const Cad& c, const LabelTree& t, const Family& f,
                              std::vector<TraceEntry>* trace) {
    ReducedCad cur{c, t};
    const int n = c.dimension;
    for (;;) {
        std::vector<ReductionSite> sites = enumerateSites(cur.cad, cur.tree);
        const auto it = std::find_if(sites.begin(), sites.end(),
                                     [n](const ReductionSite& s) { return s.level() == n; });
        if (it == sites.end()) break;
        const int before = cur.cad.cellCount();
        ReducedCad next = applyCadReduction(cur.cad, cur.tree, f, it->node);
        if (trace)
            trace->push_back(TraceEntry{it->node, n, before, next.cad.cellCount()});
        cur = std::move(next);
    }
    return cur;
}

}  // namespace cadmin

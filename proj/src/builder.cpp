#include "cadmin/builder.hpp"

#include <algorithm>
#include <exception>
#include <utility>

#include "cadmin/errors.hpp"
#include "cadmin/point_eval.hpp"

namespace cadmin {

namespace {

void sortCanonically(std::vector<Polynomial>& v) {
    std::sort(v.begin(), v.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.canonical() < b.canonical();
    });
}

// Reducta chain with respect to the last variable: p, then p with its
// leading term dropped, and so on while a nonzero polynomial remains.
std::vector<Polynomial> reductaLast(const Polynomial& p) {
    std::vector<Polynomial> out;
    Polynomial r = p;
    while (!r.isZero()) {
        out.push_back(r);
        if (r.degreeLast() <= 0) break;
        r = r.reductumLast();
    }
    return out;
}

void pushProjected(std::vector<Polynomial>& raw, const Polynomial& q) {
    if (q.isZero() || q.isConstant()) return;
    raw.push_back(q);
}

// One projection step: level-k basis -> raw level-(k-1) polynomials.
std::vector<Polynomial> projectLevel(const std::vector<Polynomial>& basis) {
    std::vector<Polynomial> raw;
    for (const Polynomial& a : basis) {
        // Every coefficient with respect to the distinguished variable: the
        // locus where they all vanish is exactly where the polynomial
        // collapses on the whole fibre, and it must be a union of base cells.
        for (const Polynomial& cf : a.coefficientsLast()) pushProjected(raw, cf);
        const int last = a.vars() - 1;
        for (const Polynomial& r : reductaLast(a))
            if (r.degreeLast() >= 2)
                for (const Polynomial& q : pscChainLast(r, r.derivative(last)))
                    pushProjected(raw, q);
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            for (const Polynomial& r : reductaLast(basis[i]))
                for (const Polynomial& s : reductaLast(basis[j])) {
                    if (r.degreeLast() < 1 || s.degreeLast() < 1) continue;
                    for (const Polynomial& q : pscChainLast(r, s)) pushProjected(raw, q);
                }
    if (raw.empty()) return {};
    std::vector<Polynomial> out = squarefreeBasis(raw);
    sortCanonically(out);
    return out;
}

}  // namespace

ProjectionBasis buildProjectionBasis(const Family& f, const std::vector<Polynomial>& extra) {
    f.validate();
    const int n = f.dimension;
    std::vector<Polynomial> top;
    for (const SetDefinition& s : f.sets)
        for (const Polynomial& p : s.polynomials)
            if (!p.isConstant()) top.push_back(p);
    for (const Polynomial& p : extra) {
        if (p.vars() != n)
            throw VariableMismatchError("extra basis polynomial has wrong variable count");
        if (!p.isZero() && !p.isConstant()) top.push_back(p);
    }
    ProjectionBasis b;
    b.dimension = n;
    b.perLevel.resize(static_cast<std::size_t>(n));
    if (!top.empty()) {
        std::vector<Polynomial> bs = squarefreeBasis(top);
        sortCanonically(bs);
        b.perLevel[static_cast<std::size_t>(n - 1)] = std::move(bs);
    }
    for (int k = n; k >= 2; --k)
        b.perLevel[static_cast<std::size_t>(k - 2)] =
            projectLevel(b.perLevel[static_cast<std::size_t>(k - 1)]);
    return b;
}

namespace {

// Rational sample values for the u+1 sectors around u strictly increasing
// section values; also tightens the values' isolating intervals until they
// are pairwise disjoint.
std::vector<Rational> sectorSampleValues(std::vector<AlgebraicNumber>& vals) {
    const std::size_t u = vals.size();
    std::vector<Rational> out;
    if (u == 0) {
        out.emplace_back(0);
        return out;
    }
    for (std::size_t j = 0; j + 1 < u; ++j)
        while (!(vals[j].hi() < vals[j + 1].lo())) {
            vals[j] = vals[j].refined();
            vals[j + 1] = vals[j + 1].refined();
        }
    out.emplace_back(BigInt(vals.front().lo().floor() - 1));
    for (std::size_t j = 0; j + 1 < u; ++j)
        out.push_back(simplestRationalStrictlyBetween(vals[j].hi(), vals[j + 1].lo()));
    out.emplace_back(BigInt(vals.back().hi().ceil() + 1));
    return out;
}

struct BuiltStack {
    int u = 0;
    std::vector<Cell> cells;  // bottom to top: base:1 .. base:(2u+1)
};

BuiltStack buildStack(const Index& base, const std::vector<AlgebraicNumber>& bs,
                      const std::vector<Polynomial>& basis) {
    struct Ent {
        AlgebraicNumber value;
        std::size_t polyIdx;
        int rootNumber;
    };
    std::vector<Ent> ents;
    for (std::size_t pi = 0; pi < basis.size(); ++pi) {
        std::vector<AlgebraicNumber> roots;
        try {
            roots = isolateFibreRoots(basis[pi], bs);
        } catch (const CurtainFibreError&) {
            continue;  // vanishes identically on this fibre: no sections here
        }
        for (std::size_t r = 0; r < roots.size(); ++r)
            ents.push_back({std::move(roots[r]), pi, static_cast<int>(r) + 1});
    }
    std::sort(ents.begin(), ents.end(), [](const Ent& a, const Ent& b) {
        const int c = AlgebraicNumber::compare(a.value, b.value);
        if (c != 0) return c < 0;
        return a.polyIdx < b.polyIdx;
    });
    // Distinct basis polynomials can share a root over special base points;
    // one section suffices, described by the first polynomial in order.
    std::vector<Ent> secs;
    for (auto& e : ents)
        if (secs.empty() || AlgebraicNumber::compare(secs.back().value, e.value) != 0)
            secs.push_back(std::move(e));

    const int u = static_cast<int>(secs.size());
    std::vector<AlgebraicNumber> vals;
    vals.reserve(secs.size());
    for (const Ent& e : secs) vals.push_back(e.value);
    const std::vector<Rational> gaps = sectorSampleValues(vals);

    std::vector<BoundFunction> bounds(static_cast<std::size_t>(u));
    for (int j = 0; j < u; ++j)
        bounds[static_cast<std::size_t>(j)].pieces.emplace(
            base, IndexedRoot{basis[secs[static_cast<std::size_t>(j)].polyIdx],
                              secs[static_cast<std::size_t>(j)].rootNumber});

    BuiltStack st;
    st.u = u;
    auto mkCell = [&](int pos, CellKind kind, AlgebraicNumber last) {
        Cell c;
        c.index = base.child(pos);
        c.kind = kind;
        c.baseIndex = base;
        c.sample = bs;
        c.sample.push_back(std::move(last));
        c.mergedFrom = {c.index};
        c.sampleFrom = c.index;
        return c;
    };
    for (int j = 0; j <= u; ++j) {
        Cell sec = mkCell(2 * j + 1, CellKind::Sector,
                          AlgebraicNumber::fromRational(gaps[static_cast<std::size_t>(j)]));
        if (j > 0) sec.lower = bounds[static_cast<std::size_t>(j - 1)];
        if (j < u) sec.upper = bounds[static_cast<std::size_t>(j)];
        st.cells.push_back(std::move(sec));
        if (j < u) {
            Cell s = mkCell(2 * (j + 1), CellKind::Section, vals[static_cast<std::size_t>(j)]);
            s.bound = bounds[static_cast<std::size_t>(j)];
            st.cells.push_back(std::move(s));
        }
    }
    return st;
}

}  // namespace

Cad liftCad(const ProjectionBasis& basis, const LiftOptions& opts) {
    const int n = basis.dimension;
    if (n < 1 || n > 3) throw Error("dimension must be 1..3");
    if (static_cast<int>(basis.perLevel.size()) != n)
        throw StructureError("projection basis must have one layer per level");
    Cad c;
    c.dimension = n;
    c.levels.resize(static_cast<std::size_t>(n));
    c.basis = basis.perLevel;

    std::vector<Index> bases{Index()};
    for (int k = 1; k <= n; ++k) {
        const auto& lvBasis = basis.level(k);
        const int nb = static_cast<int>(bases.size());
        std::vector<BuiltStack> stacks(static_cast<std::size_t>(nb));
        std::exception_ptr fail;
#ifdef CADMIN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
#endif
        for (int i = 0; i < nb; ++i) {
            try {
                const Index& b = bases[static_cast<std::size_t>(i)];
                stacks[static_cast<std::size_t>(i)] = buildStack(b, c.baseSample(b), lvBasis);
            } catch (...) {
#ifdef CADMIN_HAVE_OPENMP
#pragma omp critical
#endif
                if (!fail) fail = std::current_exception();
            }
        }
        (void)opts;
        if (fail) std::rethrow_exception(fail);

        auto& lv = c.levels[static_cast<std::size_t>(k - 1)];
        for (int i = 0; i < nb; ++i) {
            c.stackSizes[bases[static_cast<std::size_t>(i)]] = stacks[static_cast<std::size_t>(i)].u;
            for (Cell& cell : stacks[static_cast<std::size_t>(i)].cells) {
                Index idx = cell.index;
                lv.emplace(std::move(idx), std::move(cell));
            }
        }
        if (k < n) {
            bases.clear();
            for (const auto& [idx, cell] : lv) bases.push_back(idx);
        }
    }
    return c;
}

namespace {

std::vector<bool> membershipBits(const Family& f, const std::vector<AlgebraicNumber>& sample) {
    std::vector<bool> bits;
    bits.reserve(f.sets.size());
    for (const SetDefinition& s : f.sets) {
        bool all = true;
        for (const Polynomial& p : s.polynomials)
            if (signAt(p, sample) != 0) {
                all = false;
                break;
            }
        bits.push_back(all);
    }
    return bits;
}

}  // namespace

LabelTree labelCells(const Cad& c, const Family& f, std::shared_ptr<LabelPool> pool) {
    f.validate();
    if (f.dimension != c.dimension)
        throw VariableMismatchError("family dimension does not match the decomposition");
    std::map<Index, std::vector<bool>> leafBits;
    for (const auto& [idx, cell] : c.level(c.dimension))
        leafBits.emplace(idx, membershipBits(f, cell.sample));
    return labelTreeFromLeaves(c.dimension, static_cast<int>(f.sets.size()), c.stackSizes,
                               leafBits, std::move(pool));
}

namespace {

// Does the polynomial have any real zero at all?  Decided exactly with a
// scratch decomposition adapted to the polynomial itself.
bool realZeroSetEmpty(const Polynomial& g) {
    Family probe;
    probe.dimension = g.vars();
    probe.sets.push_back(SetDefinition{"probe", {g}, SetMode::Algebraic});
    const Cad scratch = liftCad(buildProjectionBasis(probe));
    for (const auto& [idx, cell] : scratch.level(scratch.dimension))
        if (signAt(g, cell.sample) == 0) return false;
    return true;
}

}  // namespace

bool adaptednessCheck(const Cad& c, const LabelTree& t, const Family& f) {
    f.validate();
    if (f.dimension != c.dimension)
        throw VariableMismatchError("family dimension does not match the decomposition");
    if (t.dimension != c.dimension || t.setCount != static_cast<int>(f.sets.size()))
        throw StructureError("label tree does not fit the decomposition and family");
    if (t.stackSizes != c.stackSizes)
        throw StructureError("label tree stack structure does not match the decomposition");

    // Stored leaf labels must agree with recomputed sample membership.
    for (const auto& [idx, cell] : c.level(c.dimension)) {
        if (!t.hasNode(idx)) throw StructureError("label tree is missing leaf " + idx.str());
        if (membershipBits(f, cell.sample) != t.leafBits(idx)) return false;
    }

    // Each set's zero locus must be a union of cells: every defining
    // polynomial factors over the top-level basis up to a factor with no
    // real zeros (sign-invariance of basis polynomials on cells then makes
    // membership constant per cell).
    const auto& top = c.basis[static_cast<std::size_t>(c.dimension - 1)];
    for (const SetDefinition& s : f.sets)
        for (const Polynomial& p : s.polynomials) {
            if (p.isConstant()) continue;  // no real zeros (zero is rejected upstream)
            Polynomial rest = squarefreePart(p);
            for (const Polynomial& b : top)
                if (auto q = divideExact(rest, b)) rest = *q;
            if (rest.isConstant()) continue;
            if (!realZeroSetEmpty(rest)) return false;
        }
    return true;
}

}  // namespace cadmin

#include "cadmin/cad.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "cadmin/errors.hpp"
#include "cadmin/point_eval.hpp"

namespace cadmin {

const std::map<Index, Cell>& Cad::level(int k) const {
    if (k < 1 || k > static_cast<int>(levels.size())) throw Error("level out of range");
    return levels[static_cast<std::size_t>(k - 1)];
}

const Cell* Cad::findCell(const Index& i) const {
    const int k = i.length();
    if (k < 1 || k > static_cast<int>(levels.size())) return nullptr;
    const auto& lv = levels[static_cast<std::size_t>(k - 1)];
    auto it = lv.find(i);
    return it == lv.end() ? nullptr : &it->second;
}

const Cell& Cad::cell(const Index& i) const {
    const Cell* c = findCell(i);
    if (!c) throw Error("no cell with index " + i.str());
    return *c;
}

int Cad::cellCount() const {
    int n = 0;
    for (const auto& lv : levels) n += static_cast<int>(lv.size());
    return n;
}

int Cad::cellCount(int levelK) const { return static_cast<int>(level(levelK).size()); }

int Cad::stackSize(const Index& base) const {
    auto it = stackSizes.find(base);
    if (it == stackSizes.end()) throw Error("no stack size for " + base.str());
    return it->second;
}

std::vector<Index> Cad::stackAbove(const Index& base) const {
    const int u = stackSize(base);
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(2 * u + 1));
    for (int j = 1; j <= 2 * u + 1; ++j) out.push_back(base.child(j));
    return out;
}

std::vector<AlgebraicNumber> Cad::baseSample(const Index& base) const {
    if (base.isRoot()) return {};
    return cell(base).sample;
}

Index Cad::baseSampleFrom(const Index& base) const {
    if (base.isRoot()) return Index();
    return cell(base).sampleFrom;
}

AlgebraicNumber pieceValueAt(const IndexedRoot& piece,
                             const std::vector<AlgebraicNumber>& basePoint) {
    const std::vector<AlgebraicNumber> roots = isolateFibreRoots(piece.poly, basePoint);
    if (piece.rootNumber < 1 || piece.rootNumber > static_cast<int>(roots.size()))
        throw StructureError("root number " + std::to_string(piece.rootNumber) +
                             " out of range: fibre has " + std::to_string(roots.size()) +
                             " roots");
    return roots[static_cast<std::size_t>(piece.rootNumber - 1)];
}

AlgebraicNumber Cad::boundValueAtSample(const BoundFunction& f, const Index& base) const {
    const Index key = baseSampleFrom(base);
    auto it = f.pieces.find(key);
    if (it == f.pieces.end())
        throw StructureError("bound has no piece over initial cell " + key.str());
    return pieceValueAt(it->second, baseSample(base));
}

namespace {

bool samePieces(const BoundFunction& a, const BoundFunction& b) {
    if (a.pieces.size() != b.pieces.size()) return false;
    auto ia = a.pieces.begin();
    for (auto ib = b.pieces.begin(); ib != b.pieces.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (ia->second.rootNumber != ib->second.rootNumber) return false;
        if (!(ia->second.poly == ib->second.poly)) return false;
    }
    return true;
}

std::vector<Index> baseMergedFrom(const Cad& c, const Index& base) {
    if (base.isRoot()) return {Index()};
    return c.cell(base).mergedFrom;
}

void checkBoundShape(const Cad& c, const Cell& cell, const BoundFunction& f,
                     const std::string& which, ValidationReport& r) {
    const std::string where = cell.index.str() + " " + which;
    if (f.pieces.empty()) {
        r.fail("bound pieces", where + " has no pieces");
        return;
    }
    std::vector<Index> keys;
    for (const auto& [k, piece] : f.pieces) {
        keys.push_back(k);
        if (k.length() != cell.level() - 1)
            r.fail("piece domain", where + " piece key " + k.str() + " has wrong level");
        if (piece.rootNumber < 1)
            r.fail("bound pieces", where + " has non-positive root number");
        if (piece.poly.vars() != cell.level())
            r.fail("bound pieces", where + " piece polynomial has wrong variable count");
        if (piece.poly.isZero())
            r.fail("bound pieces", where + " piece polynomial is zero");
        if (cell.level() >= 1 && cell.level() <= static_cast<int>(c.basis.size())) {
            const auto& lvBasis = c.basis[static_cast<std::size_t>(cell.level() - 1)];
            if (std::find(lvBasis.begin(), lvBasis.end(), piece.poly) == lvBasis.end())
                r.fail("bound pieces", where + " piece polynomial is not a basis element");
        }
    }
    std::vector<Index> expect;
    try {
        expect = baseMergedFrom(c, cell.baseIndex);
    } catch (const Error&) {
        return;  // base missing is reported elsewhere
    }
    if (keys != expect)
        r.fail("piece domain", where + " pieces do not cover the base cell's merge set");
    if (f.pieces.size() > 1) {
        if (!f.certificate) {
            r.fail("merged bound without certificate", where);
        } else {
            if (!f.certificate->verdict())
                r.fail("certificate invalid", where + " certificate verdict is false");
            for (const BoundaryCheck& chk : f.certificate->checks) {
                const bool expected = !chk.curtainObstruction && chk.limit.isFinite() &&
                                      chk.matchedValue.isFinite() &&
                                      ExtendedReal::compare(chk.limit, chk.matchedValue) == 0;
                if (chk.verdict != expected)
                    r.fail("certificate invalid",
                           where + " check at " + chk.boundaryCell.str() +
                               " records an inconsistent verdict");
            }
        }
    }
}

}  // namespace

ValidationReport validateCad(const Cad& c) {
    ValidationReport r;
    if (c.dimension < 1 || c.dimension > 3) {
        r.fail("dimension", "dimension must be 1..3");
        return r;
    }
    if (static_cast<int>(c.levels.size()) != c.dimension) {
        r.fail("level count", "expected " + std::to_string(c.dimension) + " levels");
        return r;
    }
    if (static_cast<int>(c.basis.size()) != c.dimension) {
        r.fail("basis shape", "expected one basis layer per level");
        return r;
    }
    for (int k = 1; k <= c.dimension; ++k)
        for (const Polynomial& p : c.basis[static_cast<std::size_t>(k - 1)]) {
            if (p.isZero() || p.isConstant())
                r.fail("basis shape",
                       "level " + std::to_string(k) + " basis has a trivial entry");
            else if (p.vars() != k)
                r.fail("basis shape",
                       "level " + std::to_string(k) + " basis entry has wrong variable count");
        }
    if (!r.ok) return r;
    const Cad& init = c.initialCad();

    // Per-cell structural checks.
    for (int k = 1; k <= c.dimension; ++k) {
        for (const auto& [idx, cell] : c.level(k)) {
            const std::string where = idx.str();
            if (cell.index != idx) r.fail("index consistency", where + " stored index differs");
            if (idx.length() != k) {
                r.fail("index consistency", where + " stored at wrong level");
                continue;
            }
            if (cell.baseIndex != idx.parent())
                r.fail("index consistency", where + " base index is not its parent");
            if (k > 1 && !c.findCell(cell.baseIndex)) {
                r.fail("base missing", where);
                continue;
            }
            const bool even = idx.last() % 2 == 0;
            if (even != (cell.kind == CellKind::Section))
                r.fail("alternation", where + " kind does not match index parity");
            if (cell.kind == CellKind::Section) {
                if (!cell.bound) r.fail("kind fields", where + " section without bound");
                if (cell.lower || cell.upper)
                    r.fail("kind fields", where + " section carries sector bounds");
            } else if (cell.bound) {
                r.fail("kind fields", where + " sector carries a section bound");
            }
            if (static_cast<int>(cell.sample.size()) != k)
                r.fail("sample arity", where);
            if (cell.mergedFrom.empty()) {
                r.fail("merge bookkeeping", where + " has empty merge set");
            } else {
                if (!std::is_sorted(cell.mergedFrom.begin(), cell.mergedFrom.end()))
                    r.fail("merge bookkeeping", where + " merge set not sorted");
                for (const Index& m : cell.mergedFrom)
                    if (m.length() != k)
                        r.fail("merge bookkeeping", where + " merge entry at wrong level");
                if (std::find(cell.mergedFrom.begin(), cell.mergedFrom.end(), cell.sampleFrom) ==
                    cell.mergedFrom.end())
                    r.fail("merge bookkeeping", where + " sample origin not in merge set");
                if (c.isInitial() &&
                    (cell.mergedFrom.size() != 1 || cell.mergedFrom.front() != idx))
                    r.fail("merge bookkeeping", where + " initial cell must be its own merge set");
            }
            if (cell.bound) checkBoundShape(c, cell, *cell.bound, "bound", r);
            if (cell.lower) checkBoundShape(c, cell, *cell.lower, "lower", r);
            if (cell.upper) checkBoundShape(c, cell, *cell.upper, "upper", r);
        }
    }
    if (!r.ok) return r;

    // Stack-size keys are exactly the base cells (levels 0..n-1).
    {
        std::set<Index> expect;
        expect.insert(Index());
        for (int k = 1; k < c.dimension; ++k)
            for (const auto& [idx, cell] : c.level(k)) expect.insert(idx);
        std::set<Index> got;
        for (const auto& [i, u] : c.stackSizes) {
            got.insert(i);
            if (u < 0) r.fail("stack arity", "negative stack size at " + i.str());
        }
        if (expect != got) r.fail("stack arity", "stack-size keys do not match base cells");
    }
    if (!r.ok) return r;

    // Merge bookkeeping partitions the initial cells, level by level.
    for (int k = 1; k <= c.dimension; ++k) {
        std::set<Index> seen;
        for (const auto& [idx, cell] : c.level(k))
            for (const Index& m : cell.mergedFrom)
                if (!seen.insert(m).second)
                    r.fail("merge bookkeeping", "initial cell " + m.str() + " claimed twice");
        std::set<Index> all;
        for (const auto& [idx, cell] : init.level(k)) all.insert(idx);
        if (seen != all)
            r.fail("merge bookkeeping",
                   "level " + std::to_string(k) + " does not partition the initial cells");
    }
    if (!r.ok) return r;

    // Stacks: arity, alternation order, strictly increasing bounds and
    // samples where they claim to be — all at sample points, exactly.
    for (int k = 1; k <= c.dimension; ++k) {
        std::vector<Index> bases;
        if (k == 1) {
            bases.push_back(Index());
        } else {
            for (const auto& [idx, cell] : c.level(k - 1)) bases.push_back(idx);
        }
        int counted = 0;
        for (const Index& b : bases) {
            const int u = c.stackSize(b);
            std::vector<const Cell*> stack;
            bool shape = true;
            for (int j = 1; j <= 2 * u + 1; ++j) {
                const Cell* ch = c.findCell(b.child(j));
                if (!ch) {
                    r.fail("stack arity", "missing cell " + b.child(j).str());
                    shape = false;
                    break;
                }
                stack.push_back(ch);
            }
            if (!shape) continue;
            counted += 2 * u + 1;

            const std::vector<AlgebraicNumber> bs = c.baseSample(b);
            // Sample prefixes agree with the base sample.
            for (const Cell* ch : stack) {
                if (static_cast<int>(ch->sample.size()) != k) continue;  // reported above
                for (int t = 0; t + 1 < k; ++t)
                    if (AlgebraicNumber::compare(ch->sample[static_cast<std::size_t>(t)],
                                                 bs[static_cast<std::size_t>(t)]) != 0) {
                        r.fail("sample containment",
                               ch->index.str() + " sample prefix differs from base sample");
                        break;
                    }
            }
            // Section bound values at the base sample: consistent with the
            // stored samples and strictly increasing.
            std::vector<AlgebraicNumber> values;
            bool valuesOk = true;
            for (int j = 1; j <= u; ++j) {
                const Cell& sec = *stack[static_cast<std::size_t>(2 * j - 1)];
                try {
                    AlgebraicNumber v = c.boundValueAtSample(*sec.bound, b);
                    if (AlgebraicNumber::compare(sec.sample.back(), v) != 0)
                        r.fail("sample containment",
                               sec.index.str() + " sample does not sit on its bound");
                    if (!values.empty() &&
                        AlgebraicNumber::compare(values.back(), v) >= 0)
                        r.fail("bound order",
                               "bounds over " + b.str() + " are not strictly increasing");
                    values.push_back(std::move(v));
                } catch (const Error& e) {
                    r.fail("bound evaluation", sec.index.str() + ": " + e.what());
                    valuesOk = false;
                    break;
                }
            }
            if (!valuesOk) continue;
            // Sector samples lie strictly between the adjacent bounds.
            for (int j = 0; j <= u; ++j) {
                const Cell& sec = *stack[static_cast<std::size_t>(2 * j)];
                const AlgebraicNumber& last = sec.sample.back();
                if (j > 0 && AlgebraicNumber::compare(last, values[static_cast<std::size_t>(j - 1)]) <= 0)
                    r.fail("sample containment", sec.index.str() + " sample below its lower bound");
                if (j < u && AlgebraicNumber::compare(last, values[static_cast<std::size_t>(j)]) >= 0)
                    r.fail("sample containment", sec.index.str() + " sample above its upper bound");
            }
            // Sector bounds are exactly the adjacent sections' bounds.
            for (int j = 0; j <= u; ++j) {
                const Cell& sec = *stack[static_cast<std::size_t>(2 * j)];
                if (j == 0) {
                    if (sec.lower)
                        r.fail("sector bounds", sec.index.str() + " lowest sector must be unbounded below");
                } else if (!sec.lower ||
                           !samePieces(*sec.lower, *stack[static_cast<std::size_t>(2 * j - 1)]->bound)) {
                    r.fail("sector bounds", sec.index.str() + " lower bound differs from the section below");
                }
                if (j == u) {
                    if (sec.upper)
                        r.fail("sector bounds", sec.index.str() + " top sector must be unbounded above");
                } else if (!sec.upper ||
                           !samePieces(*sec.upper, *stack[static_cast<std::size_t>(2 * j + 1)]->bound)) {
                    r.fail("sector bounds", sec.index.str() + " upper bound differs from the section above");
                }
            }
        }
        if (counted != c.cellCount(k))
            r.fail("stack arity", "level " + std::to_string(k) + " has cells outside its stacks");
    }
    return r;
}

Index initialCellAt(const Cad& c, const std::vector<AlgebraicNumber>& point) {
    const Cad& init = c.initialCad();
    const int lv = static_cast<int>(point.size());
    if (lv < 1 || lv > c.dimension) throw Error("membership point has wrong arity");
    Index cur;
    for (int l = 1; l <= lv; ++l) {
        const int u = init.stackSize(cur);
        const std::vector<AlgebraicNumber> prefix(point.begin(), point.begin() + (l - 1));
        const AlgebraicNumber& x = point[static_cast<std::size_t>(l - 1)];
        int child = 2 * u + 1;
        for (int j = 1; j <= u; ++j) {
            const Cell& sec = init.cell(cur.child(2 * j));
            const AlgebraicNumber v = pieceValueAt(sec.bound->pieces.at(cur), prefix);
            const int cmp = AlgebraicNumber::compare(x, v);
            if (cmp == 0) {
                child = 2 * j;
                break;
            }
            if (cmp < 0) {
                child = 2 * j - 1;
                break;
            }
        }
        cur = cur.child(child);
    }
    return cur;
}

Index cellMembership(const Cad& c, const std::vector<AlgebraicNumber>& point) {
    const Index ini = initialCellAt(c, point);
    if (c.isInitial()) return ini;
    for (const auto& [idx, cell] : c.level(static_cast<int>(point.size())))
        for (const Index& m : cell.mergedFrom)
            if (m == ini) return idx;
    throw StructureError("initial cell " + ini.str() + " is not covered by any cell");
}

namespace {

bool refinesSameProvenance(const Cad& coarse, const Cad& fine) {
    for (int k = 1; k <= coarse.dimension; ++k) {
        std::map<Index, Index> toCoarse;
        for (const auto& [idx, cell] : coarse.level(k))
            for (const Index& m : cell.mergedFrom) toCoarse.emplace(m, idx);
        for (const auto& [idx, cell] : fine.level(k)) {
            const Index* target = nullptr;
            for (const Index& m : cell.mergedFrom) {
                auto it = toCoarse.find(m);
                if (it == toCoarse.end()) return false;
                if (!target)
                    target = &it->second;
                else if (*target != it->second)
                    return false;  // a fine cell straddles two coarse cells
            }
        }
    }
    return true;
}

const IndexedRoot& pieceOver(const Cad& cad, const BoundFunction& f,
                             const std::vector<AlgebraicNumber>& pt) {
    const Index key = pt.empty() ? Index() : initialCellAt(cad, pt);
    auto it = f.pieces.find(key);
    if (it == f.pieces.end()) throw ComparisonFailureError("comparison failure");
    return it->second;
}

bool samePiece(const IndexedRoot& a, const IndexedRoot& b) {
    return a.rootNumber == b.rootNumber && a.poly == b.poly;
}

// Structural alignment for snapshots that do not share an initial
// decomposition.  Sound: equal answers are proved either by identical
// indexed-root data or, over a zero-dimensional base, by exact value
// equality; anything else raises ComparisonFailureError.
bool refinesForeign(const Cad& coarse, const Cad& fine) {
    struct Task {
        Index coarseCell;
        std::vector<Index> fineCells;  // fine cells whose union is the coarse cell
    };
    std::vector<Task> frontier{{Index(), {Index()}}};
    for (int l = 1; l <= coarse.dimension; ++l) {
        std::vector<Task> next;
        for (const Task& t : frontier) {
            const int cu = coarse.stackSize(t.coarseCell);
            std::map<int, std::vector<Index>> childFine;
            for (const Index& fb : t.fineCells) {
                const int fu = fine.stackSize(fb);
                const std::vector<AlgebraicNumber> s = fine.baseSample(fb);
                std::vector<int> phi(static_cast<std::size_t>(cu) + 1, 0);
                int fj = 1;
                for (int ci = 1; ci <= cu; ++ci) {
                    const Cell& csec = coarse.cell(t.coarseCell.child(2 * ci));
                    const IndexedRoot& cpiece = pieceOver(coarse, *csec.bound, s);
                    const AlgebraicNumber cv = pieceValueAt(cpiece, s);
                    int match = 0;
                    while (fj <= fu) {
                        const Cell& fsec = fine.cell(fb.child(2 * fj));
                        const int cmp = AlgebraicNumber::compare(fsec.sample.back(), cv);
                        if (cmp < 0) {
                            ++fj;
                            continue;
                        }
                        if (cmp == 0) match = fj;
                        break;
                    }
                    if (!match) return false;  // a coarse bound missing among fine bounds
                    const Cell& fsec = fine.cell(fb.child(2 * match));
                    const IndexedRoot& fpiece = pieceOver(fine, *fsec.bound, s);
                    if (l > 1 && !samePiece(cpiece, fpiece))
                        throw ComparisonFailureError("comparison failure");
                    phi[static_cast<std::size_t>(ci)] = match;
                    ++fj;
                }
                int prev = 0;
                for (int ci = 1; ci <= cu + 1; ++ci) {
                    const int cur = (ci <= cu) ? phi[static_cast<std::size_t>(ci)] : fu + 1;
                    for (int fp = 2 * prev + 1; fp <= 2 * cur - 1; ++fp)
                        childFine[2 * ci - 1].push_back(fb.child(fp));
                    if (ci <= cu) childFine[2 * ci].push_back(fb.child(2 * cur));
                    prev = cur;
                }
            }
            for (auto& [pos, cells] : childFine)
                next.push_back({t.coarseCell.child(pos), std::move(cells)});
        }
        frontier = std::move(next);
    }
    return true;
}

}  // namespace

bool refines(const Cad& coarse, const Cad& fine) {
    if (coarse.dimension != fine.dimension)
        throw Error("refinement comparison needs equal dimensions");
    if (canonicalKey(coarse.initialCad()) == canonicalKey(fine.initialCad()))
        return refinesSameProvenance(coarse, fine);
    return refinesForeign(coarse, fine);
}

namespace {

void boundKeyInto(std::ostringstream& os, const std::optional<BoundFunction>& f, char tag) {
    os << tag;
    if (!f) {
        os << "~";
        return;
    }
    for (const auto& [k, piece] : f->pieces)
        os << k.str() << "=" << piece.poly.canonical() << "#" << piece.rootNumber << ";";
}

}  // namespace

std::string canonicalKey(const Cad& c) {
    std::ostringstream os;
    os << "dim" << c.dimension;
    for (int k = 1; k <= c.dimension; ++k) {
        os << "|L" << k;
        for (const auto& [idx, cell] : c.level(k)) {
            os << "|" << idx.str() << (cell.kind == CellKind::Section ? 'S' : 'O') << "{";
            for (const Index& m : cell.mergedFrom) os << m.str();
            os << "}";
            boundKeyInto(os, cell.lower, 'l');
            boundKeyInto(os, cell.upper, 'u');
            boundKeyInto(os, cell.bound, 'b');
        }
    }
    os << "|u:";
    for (const auto& [i, u] : c.stackSizes) os << i.str() << "=" << u << ";";
    os << "|B:";
    for (const auto& lv : c.basis) {
        for (const Polynomial& p : lv) os << p.canonical() << ";";
        os << "/";
    }
    return os.str();
}

std::size_t canonicalHash(const Cad& c) { return std::hash<std::string>{}(canonicalKey(c)); }

nlohmann::json polynomialToJson(const Polynomial& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, coef] : p.terms()) {
        nlohmann::json ev = nlohmann::json::array();
        for (int i = 0; i < p.vars(); ++i) ev.push_back(e[static_cast<std::size_t>(i)]);
        terms.push_back(nlohmann::json::array({ev, coef.str()}));
    }
    return terms;
}

Polynomial polynomialFromJson(const nlohmann::json& j, int vars) {
    if (!j.is_array()) throw ParseError("polynomial must be an array of terms");
    std::vector<std::pair<std::vector<unsigned>, Rational>> ts;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array())
            throw ParseError("malformed polynomial term");
        std::vector<unsigned> e;
        for (const auto& x : t[0]) {
            if (!x.is_number_unsigned()) throw ParseError("exponents must be non-negative integers");
            e.push_back(x.get<unsigned>());
        }
        if (static_cast<int>(e.size()) > vars) throw ParseError("exponent vector too long");
        std::string coef;
        if (t[1].is_string())
            coef = t[1].get<std::string>();
        else if (t[1].is_number_integer())
            coef = std::to_string(t[1].get<long long>());
        else
            throw ParseError("coefficients must be strings or integers");
        ts.emplace_back(std::move(e), Rational::fromString(coef));
    }
    return Polynomial::fromTerms(vars, ts);
}

nlohmann::json algebraicToJson(const AlgebraicNumber& a) {
    nlohmann::json j;
    if (a.isRational()) {
        j["value"] = a.rationalValue().str();
        return j;
    }
    j["defining"] = polynomialToJson(a.defining());
    j["lo"] = a.lo().str();
    j["hi"] = a.hi().str();
    return j;
}

AlgebraicNumber algebraicFromJson(const nlohmann::json& j) {
    if (j.contains("value"))
        return AlgebraicNumber::fromRational(Rational::fromString(j.at("value").get<std::string>()));
    return AlgebraicNumber::fromDefining(polynomialFromJson(j.at("defining"), 1),
                                         Rational::fromString(j.at("lo").get<std::string>()),
                                         Rational::fromString(j.at("hi").get<std::string>()));
}

nlohmann::json extendedToJson(const ExtendedReal& e) {
    switch (e.kind()) {
    case ExtendedReal::Kind::NegInf: return nlohmann::json{{"kind", "-inf"}};
    case ExtendedReal::Kind::PosInf: return nlohmann::json{{"kind", "+inf"}};
    default: return nlohmann::json{{"kind", "finite"}, {"value", algebraicToJson(e.value())}};
    }
}

ExtendedReal extendedFromJson(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "-inf") return ExtendedReal::negInf();
    if (kind == "+inf") return ExtendedReal::posInf();
    if (kind == "finite") return ExtendedReal::finite(algebraicFromJson(j.at("value")));
    throw ParseError("unknown extended-real kind: " + kind);
}

namespace {

nlohmann::json certificateToJson(const ContinuityCertificate& cert) {
    nlohmann::json checks = nlohmann::json::array();
    for (const BoundaryCheck& ch : cert.checks) {
        checks.push_back(nlohmann::json{{"boundary", ch.boundaryCell.str()},
                                        {"adjacent", ch.adjacentCell.str()},
                                        {"limit", extendedToJson(ch.limit)},
                                        {"value", extendedToJson(ch.matchedValue)},
                                        {"verdict", ch.verdict},
                                        {"obstruction", ch.curtainObstruction}});
    }
    return nlohmann::json{{"site", cert.site.str()}, {"checks", checks}};
}

ContinuityCertificate certificateFromJson(const nlohmann::json& j) {
    ContinuityCertificate cert;
    cert.site = Index::parse(j.at("site").get<std::string>());
    for (const auto& cj : j.at("checks")) {
        BoundaryCheck ch;
        ch.boundaryCell = Index::parse(cj.at("boundary").get<std::string>());
        ch.adjacentCell = Index::parse(cj.at("adjacent").get<std::string>());
        ch.limit = extendedFromJson(cj.at("limit"));
        ch.matchedValue = extendedFromJson(cj.at("value"));
        ch.verdict = cj.at("verdict").get<bool>();
        ch.curtainObstruction = cj.at("obstruction").get<bool>();
        cert.checks.push_back(std::move(ch));
    }
    return cert;
}

nlohmann::json boundToJson(const BoundFunction& f) {
    nlohmann::json pieces = nlohmann::json::object();
    for (const auto& [k, piece] : f.pieces)
        pieces[k.str()] =
            nlohmann::json{{"poly", polynomialToJson(piece.poly)}, {"root", piece.rootNumber}};
    nlohmann::json j{{"pieces", pieces}};
    if (f.certificate) j["certificate"] = certificateToJson(*f.certificate);
    return j;
}

BoundFunction boundFromJson(const nlohmann::json& j, int levelVars) {
    BoundFunction f;
    for (const auto& [key, pj] : j.at("pieces").items()) {
        IndexedRoot piece;
        piece.poly = polynomialFromJson(pj.at("poly"), levelVars);
        piece.rootNumber = pj.at("root").get<int>();
        f.pieces.emplace(Index::parse(key), std::move(piece));
    }
    if (j.contains("certificate")) f.certificate = certificateFromJson(j.at("certificate"));
    return f;
}

nlohmann::json cellToJson(const Cell& c) {
    nlohmann::json j;
    j["index"] = c.index.str();
    j["kind"] = c.kind == CellKind::Section ? "section" : "sector";
    j["base"] = c.baseIndex.str();
    if (c.bound) j["bound"] = boundToJson(*c.bound);
    if (c.lower) j["lower"] = boundToJson(*c.lower);
    if (c.upper) j["upper"] = boundToJson(*c.upper);
    nlohmann::json sample = nlohmann::json::array();
    for (const AlgebraicNumber& a : c.sample) sample.push_back(algebraicToJson(a));
    j["sample"] = sample;
    nlohmann::json merged = nlohmann::json::array();
    for (const Index& m : c.mergedFrom) merged.push_back(m.str());
    j["mergedFrom"] = merged;
    j["sampleFrom"] = c.sampleFrom.str();
    return j;
}

Cell cellFromJson(const nlohmann::json& j) {
    Cell c;
    c.index = Index::parse(j.at("index").get<std::string>());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "section")
        c.kind = CellKind::Section;
    else if (kind == "sector")
        c.kind = CellKind::Sector;
    else
        throw ParseError("unknown cell kind: " + kind);
    c.baseIndex = Index::parse(j.at("base").get<std::string>());
    const int vars = c.index.length();
    if (j.contains("bound")) c.bound = boundFromJson(j.at("bound"), vars);
    if (j.contains("lower")) c.lower = boundFromJson(j.at("lower"), vars);
    if (j.contains("upper")) c.upper = boundFromJson(j.at("upper"), vars);
    for (const auto& aj : j.at("sample")) c.sample.push_back(algebraicFromJson(aj));
    for (const auto& mj : j.at("mergedFrom"))
        c.mergedFrom.push_back(Index::parse(mj.get<std::string>()));
    c.sampleFrom = Index::parse(j.at("sampleFrom").get<std::string>());
    return c;
}

nlohmann::json cadBodyToJson(const Cad& c) {
    nlohmann::json j;
    j["format"] = "cadmin-cad";
    j["version"] = 1;
    j["dimension"] = c.dimension;
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& lv : c.levels) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& [idx, cell] : lv) cells.push_back(cellToJson(cell));
        levels.push_back(cells);
    }
    j["levels"] = levels;
    nlohmann::json sizes = nlohmann::json::object();
    for (const auto& [i, u] : c.stackSizes) sizes[i.str()] = u;
    j["stackSizes"] = sizes;
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& lv : c.basis) {
        nlohmann::json polys = nlohmann::json::array();
        for (const Polynomial& p : lv) polys.push_back(polynomialToJson(p));
        basis.push_back(polys);
    }
    j["basis"] = basis;
    return j;
}

Cad cadBodyFromJson(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", std::string()) != "cadmin-cad")
        throw ParseError("not a cadmin-cad document");
    if (j.value("version", 0) != 1) throw ParseError("unsupported cadmin-cad version");
    Cad c;
    c.dimension = j.at("dimension").get<int>();
    if (c.dimension < 1 || c.dimension > 3) throw ParseError("dimension must be 1..3");
    const auto& levels = j.at("levels");
    if (!levels.is_array() || static_cast<int>(levels.size()) != c.dimension)
        throw ParseError("level array does not match dimension");
    c.levels.resize(static_cast<std::size_t>(c.dimension));
    for (int k = 1; k <= c.dimension; ++k) {
        for (const auto& cj : levels[static_cast<std::size_t>(k - 1)]) {
            Cell cell = cellFromJson(cj);
            if (cell.index.length() != k) throw ParseError("cell stored at wrong level");
            Index idx = cell.index;
            c.levels[static_cast<std::size_t>(k - 1)].emplace(std::move(idx), std::move(cell));
        }
    }
    for (const auto& [key, uj] : j.at("stackSizes").items())
        c.stackSizes.emplace(Index::parse(key), uj.get<int>());
    const auto& bj = j.at("basis");
    if (!bj.is_array() || static_cast<int>(bj.size()) != c.dimension)
        throw ParseError("basis array does not match dimension");
    c.basis.resize(static_cast<std::size_t>(c.dimension));
    for (int k = 1; k <= c.dimension; ++k)
        for (const auto& pj : bj[static_cast<std::size_t>(k - 1)])
            c.basis[static_cast<std::size_t>(k - 1)].push_back(polynomialFromJson(pj, k));
    return c;
}

}  // namespace

nlohmann::json cadToJson(const Cad& c) {
    nlohmann::json j = cadBodyToJson(c);
    if (!c.isInitial()) j["initial"] = cadBodyToJson(c.initialCad());
    return j;
}

Cad cadFromJson(const nlohmann::json& j) {
    try {
        Cad c = cadBodyFromJson(j);
        if (j.contains("initial"))
            c.initialRef = std::make_shared<const Cad>(cadBodyFromJson(j.at("initial")));
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed decomposition document: ") + e.what());
    }
}

}  // namespace cadmin

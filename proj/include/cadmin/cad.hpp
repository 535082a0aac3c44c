#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cadmin/algebraic_number.hpp"
#include "cadmin/extended_real.hpp"
#include "cadmin/index.hpp"
#include "cadmin/polynomial.hpp"

#include "json.hpp"

namespace cadmin {

enum class CellKind { Sector, Section };

// "The j-th real root of poly over each point of the base cell."  The
// polynomial has as many variable slots as the cell's level; the root is
// taken in the last one.
struct IndexedRoot {
    Polynomial poly;
    int rootNumber = 1;
};

// One exact boundary test inside a continuity certificate: approaching the
// boundary cell from the adjacent cell, the limit of the bound piece must
// equal the value of the middle piece at the boundary sample.
struct BoundaryCheck {
    Index boundaryCell;  // initial index of the base cell where the pieces meet
    Index adjacentCell;  // initial index of the approach-side base cell
    ExtendedReal limit = ExtendedReal::negInf();
    ExtendedReal matchedValue = ExtendedReal::negInf();
    bool verdict = false;
    // True when the check could not be attempted because no curtain-free
    // witness set covers the section at the boundary point; recorded
    // distinctly and treated as a failed check.
    bool curtainObstruction = false;
};

struct ContinuityCertificate {
    Index site;  // the reduction site whose merge this certificate justifies
    std::vector<BoundaryCheck> checks;

    bool verdict() const {
        for (const BoundaryCheck& c : checks)
            if (!c.verdict) return false;
        return true;
    }
};

// A bound function over a base cell, stored piecewise: each piece is an
// indexed root valid over one base cell of the initial decomposition.
// Bounds with more than one piece arise from merges and must carry a
// certificate that the union is continuous.
struct BoundFunction {
    std::map<Index, IndexedRoot> pieces;  // keyed by initial base-cell index
    std::optional<ContinuityCertificate> certificate;
};

struct Cell {
    Index index;
    CellKind kind = CellKind::Sector;
    Index baseIndex;
    std::optional<BoundFunction> lower;  // sectors; empty means -inf
    std::optional<BoundFunction> upper;  // sectors; empty means +inf
    std::optional<BoundFunction> bound;  // sections only
    std::vector<AlgebraicNumber> sample;
    // The initial-decomposition cells (same level) whose union this cell is,
    // sorted; a singleton for cells of the initial decomposition itself.
    std::vector<Index> mergedFrom;
    // The initial cell containing `sample`; always a member of mergedFrom.
    Index sampleFrom;

    int level() const { return index.length(); }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(const std::string& code, const std::string& detail) {
        ok = false;
        violations.push_back(code + ": " + detail);
    }
};

// A leveled cylindrical decomposition snapshot.  Values are immutable by
// convention: reductions build new snapshots.  Every snapshot keeps a link
// to the decomposition it was originally lifted from, so that piecewise
// bounds (keyed by initial cell indices) stay evaluable after any number of
// merges.
struct Cad {
    int dimension = 1;
    std::vector<std::map<Index, Cell>> levels;  // levels[k-1]: the level-k cells
    std::map<Index, int> stackSizes;            // u_I for indices of length 0..dimension-1
    // The projection basis the decomposition was lifted from: basis[k-1] holds
    // the level-k polynomials (k variable slots each), canonically sorted.
    // Carried through reductions unchanged; bound pieces only ever name basis
    // polynomials of their level.
    std::vector<std::vector<Polynomial>> basis;
    std::shared_ptr<const Cad> initialRef;      // null when this is the initial snapshot

    bool isInitial() const { return initialRef == nullptr; }
    const Cad& initialCad() const { return initialRef ? *initialRef : *this; }

    const std::map<Index, Cell>& level(int k) const;
    const Cell& cell(const Index& i) const;
    const Cell* findCell(const Index& i) const;

    int cellCount() const;
    int cellCount(int levelK) const;
    int stackSize(const Index& base) const;  // u_I

    // Cells of the stack above `base`, bottom to top: base:1 .. base:(2u+1).
    std::vector<Index> stackAbove(const Index& base) const;

    // Sample point of a base index (empty for the root).
    std::vector<AlgebraicNumber> baseSample(const Index& base) const;
    // Initial cell containing the base sample (root index for the root).
    Index baseSampleFrom(const Index& base) const;

    // Exact value of a bound function at the sample point of `base` (a cell
    // of this snapshot at the bound's base level, or the root index).
    AlgebraicNumber boundValueAtSample(const BoundFunction& f, const Index& base) const;
};

// Exact value of one bound piece over an arbitrary base point.
AlgebraicNumber pieceValueAt(const IndexedRoot& piece,
                             const std::vector<AlgebraicNumber>& basePoint);

// Structural + sample-point validation: stacks alternate, bounds strictly
// increase, samples lie where claimed, merged bounds carry valid
// certificates, merge bookkeeping partitions the initial cells.
ValidationReport validateCad(const Cad& c);

// True iff every cell of `coarse` is a union of cells of `fine`.  Exact for
// snapshots sharing an initial decomposition; for foreign pairs, decided by
// recursive structural alignment, throwing ComparisonFailureError when a
// bound comparison cannot be decided exactly.
bool refines(const Cad& coarse, const Cad& fine);

// Index of the unique cell containing the point.  The point may be a prefix
// (length 1..dimension); the index returned is at the point's level.
Index cellMembership(const Cad& c, const std::vector<AlgebraicNumber>& point);

// Index of the initial-decomposition cell containing the point (length
// 1..dimension); used to select bound pieces.
Index initialCellAt(const Cad& c, const std::vector<AlgebraicNumber>& point);

// Canonical structural serialization: excludes sample points, certificates
// and the initial-snapshot link, so equal keys mean the same decomposition
// up to representation of witnesses.
std::string canonicalKey(const Cad& c);
std::size_t canonicalHash(const Cad& c);

// Versioned JSON serialization; round-trips bit-exactly.
nlohmann::json cadToJson(const Cad& c);
Cad cadFromJson(const nlohmann::json& j);

nlohmann::json polynomialToJson(const Polynomial& p);
Polynomial polynomialFromJson(const nlohmann::json& j, int vars);
nlohmann::json algebraicToJson(const AlgebraicNumber& a);
AlgebraicNumber algebraicFromJson(const nlohmann::json& j);
nlohmann::json extendedToJson(const ExtendedReal& e);
ExtendedReal extendedFromJson(const nlohmann::json& j);

}  // namespace cadmin

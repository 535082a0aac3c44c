#pragma once

#include <stdexcept>
#include <string>

namespace cadmin {

/** Base class for all errors raised by this library. */
struct Error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/** Polynomial arithmetic over operands with different variable counts. */
struct VariableMismatchError : Error
{
    explicit VariableMismatchError(const std::string& what = "variable-count mismatch") : Error(what) {}
};

/** A family (or basis input) consisting only of zero polynomials. */
struct DegenerateFamilyError : Error
{
    explicit DegenerateFamilyError(const std::string& what = "degenerate family") : Error(what) {}
};

/** Root isolation was asked to isolate the roots of the zero polynomial
    (a curtain fibre; callers translate this into curtain semantics). */
struct CurtainFibreError : Error
{
    explicit CurtainFibreError(const std::string& what = "curtain fibre") : Error(what) {}
};

/** Fibre isolation over an algebraic base point hit a degenerate
    elimination (shared factor vanishing at the base coordinate). */
struct FibreDegenerateError : Error
{
    explicit FibreDegenerateError(const std::string& what = "fibre isolation degenerate") : Error(what) {}
};

/** refines() was asked to compare decompositions it cannot decide exactly. */
struct ComparisonFailureError : Error
{
    explicit ComparisonFailureError(const std::string& what = "comparison failure") : Error(what) {}
};

/** A reduction site that is odd, absent, or has no siblings. */
struct InvalidSiteError : Error
{
    explicit InvalidSiteError(const std::string& what = "invalid site") : Error(what) {}
};

/** applyCadReduction called on a site whose lift check fails. */
struct LiftFailureError : Error
{
    explicit LiftFailureError(const std::string& what = "lift failure") : Error(what) {}
};

/** A boundary-limit computation exhausted its refinement budget. */
struct ContinuityUndecidedError : Error
{
    explicit ContinuityUndecidedError(const std::string& what = "continuity undecided") : Error(what) {}
};

/** boundaryLimit was called at a point where the bound's polynomial
    vanishes identically on the whole fibre. */
struct CurtainAtBoundaryError : Error
{
    explicit CurtainAtBoundaryError(const std::string& what = "curtain at boundary") : Error(what) {}
};

/** Exhaustive exploration exceeded its node budget. */
struct BudgetExceededError : Error
{
    explicit BudgetExceededError(const std::string& what = "budget exceeded") : Error(what) {}
};

/** Malformed problem file or serialized document. */
struct ParseError : Error
{
    using Error::Error;
};

/** Internal structural invariant violated (indices, stacks, lookups). */
struct StructureError : Error
{
    using Error::Error;
};

} // namespace cadmin

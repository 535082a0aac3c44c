#pragma once

#include <string>
#include <vector>

#include "cadmin/errors.hpp"
#include "cadmin/polynomial.hpp"

namespace cadmin {

enum class SetMode { Algebraic };

// One member of the input family: a real algebraic set given by the common
// zeros of its polynomials.
struct SetDefinition {
    std::string name;
    std::vector<Polynomial> polynomials;
    SetMode mode = SetMode::Algebraic;
};

// A finite family of algebraic sets in R^dimension.  All polynomials are
// stored with exactly `dimension` variable slots.
struct Family {
    int dimension = 1;
    std::vector<SetDefinition> sets;

    void validate() const {
        if (dimension < 1 || dimension > 3) throw Error("family dimension must be 1..3");
        if (sets.empty()) throw Error("family must be nonempty");
        for (const SetDefinition& s : sets) {
            if (s.polynomials.empty())
                throw Error("set '" + s.name + "' has no polynomials");
            for (const Polynomial& p : s.polynomials) {
                if (p.vars() != dimension)
                    throw VariableMismatchError("set '" + s.name +
                                                "' polynomial has wrong variable count");
                if (p.isZero())
                    throw DegenerateFamilyError("set '" + s.name +
                                                "' contains the zero polynomial");
            }
        }
    }
};

}  // namespace cadmin

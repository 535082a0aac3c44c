#pragma once

#include <optional>
#include <string>

#include "cadmin/algebraic_number.hpp"

namespace cadmin {

/** A real algebraic number extended with the two infinities. */
class ExtendedReal
{
public:
    enum class Kind
    {
        NegInf,
        Finite,
        PosInf,
    };

    ExtendedReal() : kind_(Kind::Finite), value_(AlgebraicNumber()) {}
    static ExtendedReal negInf()
    {
        ExtendedReal e;
        e.kind_ = Kind::NegInf;
        e.value_.reset();
        return e;
    }
    static ExtendedReal posInf()
    {
        ExtendedReal e;
        e.kind_ = Kind::PosInf;
        e.value_.reset();
        return e;
    }
    static ExtendedReal finite(AlgebraicNumber v)
    {
        ExtendedReal e;
        e.kind_ = Kind::Finite;
        e.value_ = std::move(v);
        return e;
    }

    Kind kind() const { return kind_; }
    bool isFinite() const { return kind_ == Kind::Finite; }
    const AlgebraicNumber& value() const
    {
        if (!value_) throw Error("value of an infinite extended real");
        return *value_;
    }

    static int compare(const ExtendedReal& a, const ExtendedReal& b)
    {
        const auto rank = [](Kind k) { return k == Kind::NegInf ? -1 : (k == Kind::PosInf ? 1 : 0); };
        if (a.kind_ != Kind::Finite || b.kind_ != Kind::Finite) {
            const int ra = rank(a.kind_), rb = rank(b.kind_);
            if (ra != rb) return ra < rb ? -1 : 1;
            if (a.kind_ != Kind::Finite) return 0; // same infinity
            return 0;
        }
        return AlgebraicNumber::compare(*a.value_, *b.value_);
    }
    bool operator==(const ExtendedReal& o) const { return compare(*this, o) == 0; }
    bool operator!=(const ExtendedReal& o) const { return compare(*this, o) != 0; }
    bool operator<(const ExtendedReal& o) const { return compare(*this, o) < 0; }

    std::string str() const
    {
        switch (kind_) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "+inf";
        default: return value_->str();
        }
    }

private:
    Kind kind_;
    std::optional<AlgebraicNumber> value_;
};

} // namespace cadmin

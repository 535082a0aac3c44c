#include "cadmin/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "cadmin/errors.hpp"

namespace cadmin {

namespace {

Exponents zeroExp()
{
    Exponents e{};
    e.fill(0);
    return e;
}

} // namespace

// ---- Rational bits that need a .cpp anyway ----

Rational Rational::fromString(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational: \"" + s + "\"");
    }
}

Rational Rational::pow(const Rational& base, unsigned e)
{
    Rational r(1);
    Rational b = base;
    unsigned k = e;
    while (k) {
        if (k & 1u) r *= b;
        b *= b;
        k >>= 1u;
    }
    return r;
}

std::string Rational::str() const
{
    std::string s = v_.get_num().get_str();
    if (v_.get_den() != 1) s += "/" + v_.get_den().get_str();
    return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

QInterval QInterval::operator*(const QInterval& o) const
{
    const Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return QInterval(std::min(std::min(a, b), std::min(c, d)),
                     std::max(std::max(a, b), std::max(c, d)));
}

QInterval QInterval::pow(unsigned e) const
{
    QInterval r = QInterval::point(Rational(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

// ---- Polynomial ----

Polynomial::Polynomial(int vars) : vars_(vars)
{
    if (vars < 0 || vars > kMaxVars) throw VariableMismatchError("variable count out of range");
}

Polynomial Polynomial::constant(int vars, const Rational& c)
{
    Polynomial p(vars);
    if (!c.isZero()) p.terms_.emplace(zeroExp(), c);
    return p;
}

Polynomial Polynomial::variable(int vars, int slot)
{
    if (slot < 0 || slot >= vars) throw VariableMismatchError("variable slot out of range");
    Polynomial p(vars);
    Exponents e = zeroExp();
    e[slot] = 1;
    p.terms_.emplace(e, Rational(1));
    return p;
}

Polynomial Polynomial::fromTerms(int vars,
                                 const std::vector<std::pair<std::vector<unsigned>, Rational>>& ts)
{
    Polynomial p(vars);
    for (const auto& [exps, c] : ts) {
        if (static_cast<int>(exps.size()) > vars)
            throw VariableMismatchError("exponent vector longer than variable count");
        Exponents e = zeroExp();
        for (std::size_t i = 0; i < exps.size(); ++i) e[i] = exps[i];
        p.insertTerm(e, c);
    }
    return p;
}

void Polynomial::insertTerm(const Exponents& e, const Rational& c)
{
    if (c.isZero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.isZero()) terms_.erase(it);
    }
}

void Polynomial::checkSameVars(const Polynomial& a, const Polynomial& b)
{
    if (a.vars_ != b.vars_) throw VariableMismatchError();
}

bool Polynomial::isConstant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == zeroExp());
}

Rational Polynomial::constantValue() const
{
    if (terms_.empty()) return Rational(0);
    if (!isConstant()) throw Error("constantValue on non-constant polynomial");
    return terms_.begin()->second;
}

int Polynomial::degree(int slot) const
{
    if (terms_.empty()) return -1;
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[slot]);
    return static_cast<int>(d);
}

int Polynomial::totalDegree() const
{
    if (terms_.empty()) return -1;
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (unsigned x : e) s += x;
        d = std::max(d, s);
    }
    return static_cast<int>(d);
}

Rational Polynomial::maxAbsCoefficient() const
{
    Rational m(0);
    for (const auto& [e, c] : terms_) m = std::max(m, c.abs());
    return m;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const
{
    checkSameVars(*this, o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.insertTerm(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const
{
    checkSameVars(*this, o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.insertTerm(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const
{
    checkSameVars(*this, o);
    Polynomial r(vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e;
            for (int i = 0; i < kMaxVars; ++i) e[i] = ea[i] + eb[i];
            r.insertTerm(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const
{
    Polynomial r(vars_);
    if (c.isZero()) return r;
    for (const auto& [e, cc] : terms_) r.terms_.emplace(e, cc * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const
{
    Polynomial r = Polynomial::constant(vars_, Rational(1));
    Polynomial b = *this;
    unsigned k = e;
    while (k) {
        if (k & 1u) r = r * b;
        b = b * b;
        k >>= 1u;
    }
    return r;
}

Polynomial Polynomial::derivative(int slot) const
{
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[slot] == 0) continue;
        Exponents d = e;
        d[slot] -= 1;
        r.insertTerm(d, c * Rational(static_cast<long>(e[slot])));
    }
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& pt) const
{
    if (static_cast<int>(pt.size()) != vars_)
        throw VariableMismatchError("evaluation point arity mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < vars_; ++i)
            if (e[i]) t *= Rational::pow(pt[i], e[i]);
        acc += t;
    }
    return acc;
}

QInterval Polynomial::evaluateOnBox(const std::vector<QInterval>& box) const
{
    if (static_cast<int>(box.size()) != vars_)
        throw VariableMismatchError("evaluation box arity mismatch");
    QInterval acc = QInterval::point(Rational(0));
    for (const auto& [e, c] : terms_) {
        QInterval t = QInterval::point(Rational(1));
        for (int i = 0; i < vars_; ++i)
            if (e[i]) t = t * box[i].pow(e[i]);
        acc = acc + t.scaled(c);
    }
    return acc;
}

std::vector<Polynomial> Polynomial::coefficientsLast() const
{
    if (vars_ == 0) throw VariableMismatchError("coefficientsLast on 0-variable polynomial");
    const int d = std::max(degreeLast(), 0);
    std::vector<Polynomial> cs(static_cast<std::size_t>(d) + 1, Polynomial(vars_ - 1));
    const int last = vars_ - 1;
    for (const auto& [e, c] : terms_) {
        Exponents r = e;
        unsigned k = r[last];
        r[last] = 0;
        cs[k].insertTerm(r, c);
    }
    return cs;
}

Polynomial Polynomial::leadingCoefficientLast() const
{
    if (isZero()) return Polynomial(std::max(vars_ - 1, 0));
    auto cs = coefficientsLast();
    return cs.back();
}

Polynomial Polynomial::reductumLast() const
{
    if (isZero()) return *this;
    const int d = degreeLast();
    const int last = vars_ - 1;
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_)
        if (static_cast<int>(e[last]) != d) r.terms_.emplace(e, c);
    return r;
}

Polynomial Polynomial::fromCoefficientsLast(int vars, const std::vector<Polynomial>& cs)
{
    Polynomial r(vars);
    const int last = vars - 1;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].vars() != vars - 1)
            throw VariableMismatchError("coefficient arity mismatch");
        for (const auto& [e, c] : cs[k].terms()) {
            Exponents x = e;
            x[last] = static_cast<unsigned>(k);
            r.insertTerm(x, c);
        }
    }
    return r;
}

Polynomial Polynomial::substituteLast(const Rational& v) const
{
    if (vars_ == 0) throw VariableMismatchError("substituteLast on 0-variable polynomial");
    Polynomial r(vars_ - 1);
    const int last = vars_ - 1;
    for (const auto& [e, c] : terms_) {
        Exponents x = e;
        x[last] = 0;
        r.insertTerm(x, c * Rational::pow(v, e[last]));
    }
    return r;
}

Polynomial Polynomial::substitutePrefix(const std::vector<Rational>& values) const
{
    const int m = static_cast<int>(values.size());
    if (m > vars_) throw VariableMismatchError("prefix longer than variable count");
    Polynomial r(vars_ - m);
    for (const auto& [e, c] : terms_) {
        Rational cc = c;
        for (int i = 0; i < m; ++i)
            if (e[i]) cc *= Rational::pow(values[i], e[i]);
        Exponents x = zeroExp();
        for (int i = m; i < vars_; ++i) x[i - m] = e[i];
        r.insertTerm(x, cc);
    }
    return r;
}

Polynomial Polynomial::withVars(int newVars) const
{
    Polynomial r(newVars);
    for (const auto& [e, c] : terms_) {
        for (int i = newVars; i < kMaxVars; ++i)
            if (e[i]) throw VariableMismatchError("shrinking over a used slot");
        r.terms_.emplace(e, c);
    }
    return r;
}

Polynomial Polynomial::remapSlots(const std::vector<int>& target, int newVars) const
{
    if (static_cast<int>(target.size()) != vars_)
        throw VariableMismatchError("slot map arity mismatch");
    Polynomial r(newVars);
    for (const auto& [e, c] : terms_) {
        Exponents x = zeroExp();
        for (int i = 0; i < vars_; ++i) {
            if (!e[i]) continue;
            if (target[i] < 0 || target[i] >= newVars)
                throw VariableMismatchError("slot map target out of range");
            x[target[i]] += e[i];
        }
        r.insertTerm(x, c);
    }
    return r;
}

Polynomial Polynomial::swapSlots(int i, int j) const
{
    std::vector<int> t(vars_);
    for (int k = 0; k < vars_; ++k) t[k] = k;
    std::swap(t[i], t[j]);
    return remapSlots(t, vars_);
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& images, int newVars) const
{
    if (static_cast<int>(images.size()) != vars_)
        throw VariableMismatchError("compose image arity mismatch");
    Polynomial acc(newVars);
    for (const auto& [e, c] : terms_) {
        Polynomial t = Polynomial::constant(newVars, c);
        for (int i = 0; i < vars_; ++i)
            if (e[i]) t = t * images[i].pow(e[i]);
        acc = acc + t;
    }
    return acc;
}

std::string Polynomial::str(const std::vector<std::string>& names) const
{
    if (terms_.empty()) return "0";
    static const std::vector<std::string> defaultNames = {"x", "y", "z", "t"};
    const auto& nm = names.empty() ? defaultNames : names;
    std::ostringstream os;
    bool first = true;
    // Print highest term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) { os << "-"; a = a.abs(); }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            a = a.abs();
        }
        first = false;
        bool hasVar = false;
        std::ostringstream vs;
        for (int i = 0; i < vars_; ++i) {
            if (!e[i]) continue;
            if (hasVar) vs << "*";
            vs << (i < static_cast<int>(nm.size()) ? nm[i] : "v" + std::to_string(i));
            if (e[i] > 1) vs << "^" << e[i];
            hasVar = true;
        }
        if (!hasVar) {
            os << a.str();
        } else {
            if (a != Rational(1)) os << a.str() << "*";
            os << vs.str();
        }
    }
    return os.str();
}

std::string Polynomial::canonical() const
{
    std::ostringstream os;
    os << vars_ << "#";
    for (const auto& [e, c] : terms_) {
        for (int i = 0; i < vars_; ++i) os << e[i] << (i + 1 < vars_ ? "," : "");
        os << ":" << c.str() << ";";
    }
    return os.str();
}

// ---- free algebra ----

int effectiveVars(const Polynomial& p)
{
    int v = 0;
    for (const auto& [e, c] : p.terms())
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i]) v = std::max(v, i + 1);
    return v;
}

Polynomial toEffectiveVars(const Polynomial& p)
{
    return p.withVars(effectiveVars(p));
}

Polynomial normalizeCanonical(const Polynomial& p)
{
    if (p.isZero()) return p;
    // Integer-primitive form: clear denominators, divide by numerator gcd.
    BigInt denLcm(1), numGcd(0);
    for (const auto& [e, c] : p.terms()) {
        mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), c.den().get_mpz_t());
        mpz_gcd(numGcd.get_mpz_t(), numGcd.get_mpz_t(), c.num().get_mpz_t());
    }
    Rational scale(denLcm, numGcd);
    // Positive leading coefficient under the term order.
    if ((p.terms().rbegin()->second * scale).sign() < 0) scale = -scale;
    return p * scale;
}

Polynomial contentLast(const Polynomial& p)
{
    Polynomial c(std::max(p.vars() - 1, 0));
    for (const Polynomial& coef : p.coefficientsLast()) c = gcd(c, coef);
    return c;
}

Polynomial primitivePartLast(const Polynomial& p)
{
    if (p.isZero()) return p;
    Polynomial c = contentLast(p);
    Polynomial cl = c.withVars(p.vars());
    auto q = divideExact(p, cl);
    if (!q) throw StructureError("content does not divide polynomial");
    return *q;
}

std::optional<Polynomial> divideExact(const Polynomial& a, const Polynomial& b)
{
    if (b.isZero()) return std::nullopt;
    if (a.vars() != b.vars()) throw VariableMismatchError();
    Polynomial rem = a;
    Polynomial quot(a.vars());
    const auto& lb = *b.terms().rbegin();
    while (!rem.isZero()) {
        const auto la = *rem.terms().rbegin();
        Exponents d;
        for (int i = 0; i < kMaxVars; ++i) {
            if (la.first[i] < lb.first[i]) return std::nullopt;
            d[i] = la.first[i] - lb.first[i];
        }
        std::vector<unsigned> exps(d.begin(), d.begin() + a.vars());
        Polynomial mono = Polynomial::fromTerms(a.vars(), {{exps, la.second / lb.second}});
        quot = quot + mono;
        rem = rem - mono * b;
    }
    return quot;
}

Polynomial pseudoRemainderLast(const Polynomial& a, const Polynomial& b)
{
    if (b.isZero()) throw Error("pseudo-remainder by zero");
    const int last = a.vars() - 1;
    if (a.vars() != b.vars()) throw VariableMismatchError();
    const int db = b.degree(last);
    const int da = a.degree(last);
    if (da < db) return a;
    Polynomial lb = b.leadingCoefficientLast().withVars(a.vars());
    Polynomial r = a;
    int dr = da;
    int steps = 0;
    while (!r.isZero() && dr >= db) {
        Polynomial lr = r.leadingCoefficientLast().withVars(a.vars());
        Polynomial shift = Polynomial::variable(a.vars(), last).pow(static_cast<unsigned>(dr - db));
        r = r * lb - b * (lr * shift);
        dr = r.degree(last);
        ++steps;
    }
    // Scale so that lc(b)^(deg a - deg b + 1) * a = q*b + result exactly.
    for (; steps < da - db + 1 && !r.isZero(); ++steps) r = r * lb;
    return r;
}

namespace {

/** Univariate gcd over Q by the Euclidean algorithm, then normalized. */
Polynomial gcdUnivariate(const Polynomial& a, const Polynomial& b)
{
    Polynomial r0 = a, r1 = b;
    while (!r1.isZero()) {
        // remainder of r0 by r1
        Polynomial rem = r0;
        const int d1 = r1.degree(0);
        const Rational lc1 = r1.terms().rbegin()->second;
        while (!rem.isZero() && rem.degree(0) >= d1) {
            const int dr = rem.degree(0);
            const Rational lcr = rem.terms().rbegin()->second;
            Polynomial t = Polynomial::fromTerms(
                1, {{{static_cast<unsigned>(dr - d1)}, lcr / lc1}});
            rem = rem - t * r1;
        }
        r0 = r1;
        r1 = rem;
    }
    return normalizeCanonical(r0);
}

} // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    if (a.vars() != b.vars()) throw VariableMismatchError();
    if (a.isZero()) return normalizeCanonical(b);
    if (b.isZero()) return normalizeCanonical(a);
    if (a.isConstant() || b.isConstant())
        return Polynomial::constant(a.vars(), Rational(1));
    if (a.vars() == 1) return gcdUnivariate(a, b);

    // Recurse on the last variable: gcd = gcd(contents) * gcd of primitive
    // parts via a primitive pseudo-remainder sequence.
    const int last = a.vars() - 1;
    if (a.degree(last) <= 0 && b.degree(last) <= 0) {
        // Neither uses the last variable; recurse one level down.
        Polynomial ga = gcd(a.withVars(last), b.withVars(last));
        return ga.withVars(a.vars());
    }
    if (a.degree(last) <= 0) {
        // a is a "constant" with respect to the last variable: it divides
        // b's content side only.
        Polynomial g = gcd(a.withVars(last), contentLast(b));
        return normalizeCanonical(g.withVars(a.vars()));
    }
    if (b.degree(last) <= 0) {
        Polynomial g = gcd(b.withVars(last), contentLast(a));
        return normalizeCanonical(g.withVars(a.vars()));
    }

    Polynomial ca = contentLast(a), cb = contentLast(b);
    Polynomial gc = gcd(ca, cb);
    Polynomial pa = primitivePartLast(a), pb = primitivePartLast(b);

    Polynomial r0 = pa, r1 = pb;
    if (r0.degree(last) < r1.degree(last)) std::swap(r0, r1);
    while (true) {
        Polynomial r2 = pseudoRemainderLast(r0, r1);
        if (r2.isZero()) break;
        if (r2.degree(last) <= 0) {
            // Primitive parts are coprime in the last variable.
            return normalizeCanonical(gc.withVars(a.vars()));
        }
        r0 = r1;
        r1 = primitivePartLast(r2);
    }
    Polynomial g = gc.withVars(a.vars()) * primitivePartLast(r1);
    return normalizeCanonical(g);
}

Polynomial squarefreePart(const Polynomial& p)
{
    if (p.isZero()) return p;
    if (p.isConstant()) return Polynomial::constant(p.vars(), Rational(1));
    Polynomial g(p.vars());
    bool any = false;
    Polynomial acc = p;
    for (int i = 0; i < p.vars(); ++i) {
        if (p.degree(i) <= 0) continue;
        Polynomial d = p.derivative(i);
        acc = any ? gcd(acc, d) : gcd(p, d);
        any = true;
    }
    if (!any) return normalizeCanonical(p);
    auto q = divideExact(p, acc);
    if (!q) throw StructureError("squarefree: gcd does not divide");
    return normalizeCanonical(*q);
}

std::vector<Polynomial> squarefreeBasis(const std::vector<Polynomial>& polys)
{
    bool sawNonzero = false;
    std::vector<Polynomial> work;
    int vars = -1;
    for (const Polynomial& p : polys) {
        if (vars < 0) vars = p.vars();
        else if (p.vars() != vars) throw VariableMismatchError("basis inputs differ in variable count");
        if (p.isZero()) continue;
        sawNonzero = true;
        if (p.isConstant()) continue;
        work.push_back(squarefreePart(p));
    }
    if (!polys.empty() && !sawNonzero) throw DegenerateFamilyError();

    // Split until pairwise coprime.
    std::vector<Polynomial> basis;
    while (!work.empty()) {
        Polynomial p = work.back();
        work.pop_back();
        if (p.isConstant()) continue;
        bool split = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Polynomial g = gcd(p, basis[i]);
            if (g.isConstant()) continue;
            // replace basis[i] by g and basis[i]/g; push p/g back
            Polynomial bi = basis[i];
            auto bq = divideExact(bi, g);
            auto pq = divideExact(p, g);
            if (!bq || !pq) throw StructureError("coprime split: gcd does not divide");
            basis.erase(basis.begin() + static_cast<long>(i));
            basis.push_back(normalizeCanonical(g));
            if (!bq->isConstant()) work.push_back(normalizeCanonical(*bq));
            if (!pq->isConstant()) work.push_back(normalizeCanonical(*pq));
            split = true;
            break;
        }
        if (!split) basis.push_back(normalizeCanonical(p));
    }
    // Dedup + stable order by canonical form.
    std::sort(basis.begin(), basis.end(),
              [](const Polynomial& x, const Polynomial& y) { return x.canonical() < y.canonical(); });
    basis.erase(std::unique(basis.begin(), basis.end(),
                            [](const Polynomial& x, const Polynomial& y) { return x == y; }),
                basis.end());
    return basis;
}

} // namespace cadmin

#include <algorithm>
#include <vector>

#include "cadmin/errors.hpp"
#include "cadmin/polynomial.hpp"

namespace cadmin {

Polynomial bareissDeterminant(std::vector<std::vector<Polynomial>> m)
{
    const std::size_t n = m.size();
    if (n == 0) throw Error("determinant of empty matrix");
    const int vars = m[0][0].vars();
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant of non-square matrix");
    if (n == 1) return m[0][0];

    int sign = 1;
    Polynomial prev = Polynomial::constant(vars, Rational(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // Partial pivoting: any nonzero entry in column k works.
        std::size_t piv = k;
        while (piv < n && m[piv][k].isZero()) ++piv;
        if (piv == n) return Polynomial(vars); // singular
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto q = divideExact(num, prev);
                if (!q) throw StructureError("Bareiss division not exact");
                m[i][j] = *q;
            }
            m[i][k] = Polynomial(vars);
        }
        prev = m[k][k];
    }
    Polynomial det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

namespace {

/**
 * Matrix whose determinant is the j-th principal subresultant coefficient
 * of a and b with respect to the last variable: rows are the coefficient
 * vectors of x^(n-j-1)*a ... a and x^(m-j-1)*b ... b, restricted to the
 * columns of degrees m+n-j-1 down to j.
 */
Polynomial pscDeterminant(const std::vector<Polynomial>& ac, const std::vector<Polynomial>& bc,
                          int m, int n, int j, int vars)
{
    const int rows = (n - j) + (m - j);
    const int cols = m + n - 2 * j;
    if (rows <= 0 || cols <= 0 || rows != cols)
        throw StructureError("psc matrix shape");
    const int coefVars = vars - 1;
    auto coefOf = [&](const std::vector<Polynomial>& cs, int deg) {
        if (deg < 0 || deg >= static_cast<int>(cs.size())) return Polynomial(coefVars);
        return cs[static_cast<std::size_t>(deg)];
    };
    std::vector<std::vector<Polynomial>> mat(
        static_cast<std::size_t>(rows),
        std::vector<Polynomial>(static_cast<std::size_t>(cols), Polynomial(coefVars)));
    // Row r (0-based) of the a-block represents x^(n-j-1-r) * a.
    for (int r = 0; r < n - j; ++r) {
        const int shift = n - j - 1 - r;
        for (int c = 0; c < cols; ++c) {
            const int colDeg = m + n - j - 1 - c;
            mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                coefOf(ac, colDeg - shift);
        }
    }
    for (int r = 0; r < m - j; ++r) {
        const int shift = m - j - 1 - r;
        for (int c = 0; c < cols; ++c) {
            const int colDeg = m + n - j - 1 - c;
            mat[static_cast<std::size_t>(n - j + r)][static_cast<std::size_t>(c)] =
                coefOf(bc, colDeg - shift);
        }
    }
    return bareissDeterminant(std::move(mat));
}

} // namespace

Polynomial resultantLast(const Polynomial& a, const Polynomial& b)
{
    if (a.isZero() && b.isZero()) throw Error("resultant of two zero polynomials");
    if (a.vars() != b.vars()) throw VariableMismatchError();
    const int vars = a.vars();
    const int last = vars - 1;
    const int m = std::max(a.degree(last), 0);
    const int n = std::max(b.degree(last), 0);
    // Degree-zero conventions: res(a, b) = b^deg(a) when b is constant in
    // the last variable (and symmetrically).
    if (a.isZero() || b.isZero()) return Polynomial(std::max(vars - 1, 0));
    if (m == 0 && n == 0) return Polynomial::constant(vars - 1, Rational(1));
    auto ac = a.coefficientsLast();
    auto bc = b.coefficientsLast();
    if (n == 0) return bc[0].pow(static_cast<unsigned>(m));
    if (m == 0) return ac[0].pow(static_cast<unsigned>(n));
    return pscDeterminant(ac, bc, m, n, 0, vars);
}

Polynomial discriminantLast(const Polynomial& p)
{
    const int last = p.vars() - 1;
    const int m = p.degree(last);
    if (m < 2) throw Error("discriminant of degree < 2");
    const Polynomial res = resultantLast(p, p.derivative(last));
    auto q = divideExact(res, p.leadingCoefficientLast());
    if (!q) throw StructureError("discriminant division not exact");
    return (m % 4 == 2 || m % 4 == 3) ? -*q : *q; // (-1)^(m(m-1)/2)
}

std::vector<Polynomial> pscChainLast(const Polynomial& a, const Polynomial& b)
{
    if (a.vars() != b.vars()) throw VariableMismatchError();
    const int vars = a.vars();
    const int last = vars - 1;
    const int m = a.degree(last);
    const int n = b.degree(last);
    std::vector<Polynomial> out;
    if (m < 1 || n < 1) return out;
    auto ac = a.coefficientsLast();
    auto bc = b.coefficientsLast();
    const int count = std::min(m, n);
    for (int j = 0; j < count; ++j) out.push_back(pscDeterminant(ac, bc, m, n, j, vars));
    return out;
}

Polynomial eliminateSlot(const Polynomial& a, const Polynomial& b, int slot)
{
    const int vars = a.vars();
    if (slot < 0 || slot >= vars) throw VariableMismatchError("eliminate slot out of range");
    Polynomial as = a.swapSlots(slot, vars - 1);
    Polynomial bs = b.swapSlots(slot, vars - 1);
    Polynomial r = resultantLast(as, bs);
    if (slot == vars - 1) return r;
    // After the swap, r's position `slot` holds the old last variable and
    // positions above it still hold their original variables. Shift those
    // down by one and send the old last variable to the end, so the
    // surviving variables appear in their original relative order.
    std::vector<int> remap(static_cast<std::size_t>(vars - 1));
    for (int i = 0; i < vars - 1; ++i) {
        if (i < slot) remap[static_cast<std::size_t>(i)] = i;
        else if (i == slot) remap[static_cast<std::size_t>(i)] = vars - 2;
        else remap[static_cast<std::size_t>(i)] = i - 1;
    }
    return r.remapSlots(remap, vars - 1);
}

} // namespace cadmin

#include "wildcycle/series_matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace wildcycle {

Series scale_inv(const Series& x, long k) { return x.scaled(ParamScalar(1) / ParamScalar(k)); }

LaurentMatrix smat_identity(int n, int q)
{
    LaurentMatrix m(n, n, Series(q));
    for (int i = 0; i < n; ++i) m(i, i) = Series::constant(ParamScalar(1), q);
    return m;
}

LaurentMatrix smat_zero(int rows, int cols, int q) { return LaurentMatrix(rows, cols, Series(q)); }

LaurentMatrix smat_from_constant(const ScalarMat& c, int q)
{
    LaurentMatrix m(c.rows(), c.cols(), Series(q));
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j)
            if (!c(i, j).is_zero()) m(i, j) = Series::constant(c(i, j), q);
    return m;
}

ScalarMat scalar_identity(int n) { return ScalarMat::identity(n, ParamScalar(1), ParamScalar(0)); }

int smat_valuation(const LaurentMatrix& m)
{
    int v = kExact;
    for (const auto& x : m.data()) v = std::min(v, x.valuation());
    return v;
}

int smat_precision(const LaurentMatrix& m)
{
    int p = kExact;
    for (const auto& x : m.data()) p = std::min(p, x.precision());
    return p;
}

int smat_q(const LaurentMatrix& m)
{
    for (const auto& x : m.data())
        if (!x.is_q_free()) return x.q();
    return m.data().empty() ? 1 : m.data().front().q();
}

ScalarMat smat_coeff(const LaurentMatrix& m, int n)
{
    return m.map([n](const Series& s) { return s.coeff(n); });
}

LaurentMatrix smat_theta(const LaurentMatrix& m)
{
    return m.map([](const Series& s) { return s.theta(); });
}

LaurentMatrix smat_ramified(const LaurentMatrix& m, int r)
{
    return m.map([r](const Series& s) { return s.is_q_free() ? s : s.ramified(r); });
}

LaurentMatrix smat_shifted(const LaurentMatrix& m, int k)
{
    return m.map([k](const Series& s) { return s.shifted(k); });
}

LaurentMatrix smat_with_precision(const LaurentMatrix& m, int p)
{
    return m.map([p](const Series& s) { return s.with_precision(p); });
}

LaurentMatrix smat_eval_lambda(const LaurentMatrix& m, const Cyclotomic& l0)
{
    return m.map([&l0](const Series& s) { return s.eval_lambda(l0); });
}

LaurentMatrix smat_with_q(const LaurentMatrix& m, int q)
{
    return m.map([q](const Series& s) { return s.q() == q ? s : s.with_q(q); });
}

int smat_common_order(const LaurentMatrix& m)
{
    int n = 1;
    for (const auto& x : m.data()) n = lcm_int(n, x.common_order());
    return n;
}

LaurentMatrix smat_inverse(const LaurentMatrix& a, int cap)
{
    int n = a.rows();
    int q = smat_q(a);
    LaurentMatrix m = a;
    LaurentMatrix inv = smat_identity(n, q);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i) {
            if (m(i, c).known_zero()) continue;
            if (piv < 0 || m(i, c).valuation() < m(piv, c).valuation()) piv = i;
        }
        if (piv < 0) {
            bool exact = true;
            for (int i = c; i < n; ++i) exact = exact && m(i, c).is_exact();
            if (exact) fail(ErrorKind::SingularGauge, "gauge matrix is singular");
            fail(ErrorKind::InsufficientTruncation, "gauge matrix is not certified invertible at this truncation");
        }
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        Series pinv = m(c, c).inverse(cap);
        for (int j = 0; j < n; ++j) {
            if (!m(c, j).is_exact_zero()) m(c, j) = m(c, j) * pinv;
            if (!inv(c, j).is_exact_zero()) inv(c, j) = inv(c, j) * pinv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || m(i, c).is_exact_zero()) continue;
            Series f = m(i, c);
            for (int j = 0; j < n; ++j) {
                if (!m(c, j).is_exact_zero()) m(i, j) -= f * m(c, j);
                if (!inv(c, j).is_exact_zero()) inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

LaurentMatrix smat_gauge(const LaurentMatrix& a, const LaurentMatrix& g, const ParamScalar& lam)
{
    int n = a.rows();
    int pa = smat_precision(a);
    int va = std::min(0, smat_valuation(a));
    int vg = std::min(smat_valuation(g), kExact / 2);
    int cap = pa >= kExact ? kExact / 2 : pa - va + 4 * n * (std::abs(vg) + 1);
    LaurentMatrix ginv = smat_inverse(g, cap);
    LaurentMatrix x = a * g;
    if (!lam.is_zero()) {
        LaurentMatrix th = smat_theta(g);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < g.cols(); ++j)
                if (!th(i, j).is_exact_zero()) x(i, j) += th(i, j).scaled(lam);
    }
    return ginv * x;
}

LaurentMatrix smat_diag_powers(const std::vector<int>& k, int q)
{
    int n = static_cast<int>(k.size());
    LaurentMatrix m = smat_zero(n, n, q);
    for (int i = 0; i < n; ++i) m(i, i) = Series::monomial(ParamScalar(1), k[i], q);
    return m;
}

std::string smat_to_string(const LaurentMatrix& m, const std::string& var, const std::string& lvar)
{
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        out += "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += " ; ";
            out += m(i, j).to_string(var, lvar);
        }
        out += "]\n";
    }
    return out;
}

}  // namespace wildcycle

#include "wildcycle/lambda_connection.hpp"

#include "wildcycle/errors.hpp"

#include <map>

namespace wildcycle {

int LambdaConnection::pole_order() const
{
    int v = smat_valuation(A);
    return v < 0 ? -v : 0;
}

LambdaConnection twist_exponential(const LambdaConnection& m, const ExpFactor& phi, int sign)
{
    if (phi.is_zero()) return m;
    if (m.q % phi.q() != 0)
        fail(ErrorKind::InvalidArgument, "exponential factor ramification " + std::to_string(phi.q()) + " does not divide module ramification " + std::to_string(m.q));
    ExpFactor f = phi.at_ramification(m.q);
    if (m.precision() <= -f.pole_order())
        fail(ErrorKind::InsufficientTruncation, "twist pole order exceeds the guaranteed order");
    Series th = f.theta_series();
    if (sign < 0) th = -th;
    LambdaConnection r = m;
    for (int i = 0; i < m.rank(); ++i) r.A(i, i) += th;
    return r;
}

LambdaConnection ramify_pullback(const LambdaConnection& m, int r)
{
    if (r < 1) fail(ErrorKind::InvalidArgument, "ramification factor must be positive");
    if (r == 1) return m;
    LaurentMatrix a = smat_ramified(m.A, r).map([r](const Series& s) { return s.scaled(ParamScalar(r)); });
    return LambdaConnection(m.q * r, smat_with_q(a, m.q * r), m.lambda0);
}

namespace {

int ceil_div(int a, int b)
{
    int q = a / b;
    if ((a % b != 0) && ((a > 0) == (b > 0))) ++q;
    return q;
}

int floor_div(int a, int b)
{
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

LambdaConnection pushforward(const LambdaConnection& m, int e)
{
    if (e < 1 || m.q % e != 0) fail(ErrorKind::InvalidArgument, "push degree must divide the module ramification");
    if (e == 1) return m;
    int r = m.rank();
    int nq = m.q / e;
    int n = r * e;
    ParamScalar inv_e = ParamScalar(1) / ParamScalar(e);
    ParamScalar lam = m.lambda_scalar();
    LaurentMatrix b = smat_zero(n, n, nq);
    for (int k = 0; k < e; ++k) {
        for (int i = 0; i < r; ++i) {
            int col = k * r + i;
            for (int mm = 0; mm < r; ++mm) {
                const Series& s = m.A(mm, i);
                int P = s.precision();
                // one destination series per k'
                std::vector<std::map<int, ParamScalar>> parts(e);
                for (int t = s.valuation(); t < s.end(); ++t) {
                    ParamScalar c = s.coeff(t);
                    if (c.is_zero()) continue;
                    int tot = k + t;
                    int kp = ((tot % e) + e) % e;
                    parts[kp][floor_div(tot - kp, e)] += c * inv_e;
                }
                for (int kp = 0; kp < e; ++kp) {
                    int prec = s.is_exact() ? kExact : ceil_div(P + k - kp, e);
                    Series dst(nq);
                    if (parts[kp].empty()) {
                        dst = s.is_exact() ? Series(nq) : Series::zero_to(prec, nq);
                    } else {
                        int lo = parts[kp].begin()->first, hi = parts[kp].rbegin()->first;
                        std::vector<ParamScalar> v(hi - lo + 1);
                        for (auto& [j, c] : parts[kp]) v[j - lo] = c;
                        dst = Series::from_coeffs(nq, lo, v, prec);
                    }
                    b(kp * r + mm, col) += dst;
                }
            }
            if (k > 0) b(col, col) += Series::constant(lam * ParamScalar(k) * inv_e, nq);
        }
    }
    return LambdaConnection(nq, b, m.lambda0);
}

LambdaConnection restrict_lambda(const LambdaConnection& m, const Cyclotomic& l0)
{
    if (m.lambda0) {
        if (*m.lambda0 != l0) fail(ErrorKind::InvalidArgument, "module already restricted at a different lambda");
    }
    return LambdaConnection(m.q, smat_eval_lambda(m.A, l0), l0);
}

LambdaConnection gauge_transform(const LambdaConnection& m, const LaurentMatrix& g)
{
    LaurentMatrix gg = smat_with_q(g, m.q);
    return LambdaConnection(m.q, smat_gauge(m.A, gg, m.lambda_scalar()), m.lambda0);
}

namespace {

void check_compatible(const LambdaConnection& a, const LambdaConnection& b)
{
    if (a.q != b.q) fail(ErrorKind::InvalidArgument, "modules over different ramifications");
    bool same = (!a.lambda0 && !b.lambda0) || (a.lambda0 && b.lambda0 && *a.lambda0 == *b.lambda0);
    if (!same) fail(ErrorKind::InvalidArgument, "modules restricted at different lambda values");
}

}  // namespace

LambdaConnection direct_sum(const LambdaConnection& a, const LambdaConnection& b)
{
    check_compatible(a, b);
    int n = a.rank() + b.rank();
    LaurentMatrix m = smat_zero(n, n, a.q);
    m.set_block(0, 0, a.A);
    m.set_block(a.rank(), a.rank(), b.A);
    return LambdaConnection(a.q, m, a.lambda0);
}

LambdaConnection tensor(const LambdaConnection& a, const LambdaConnection& b)
{
    check_compatible(a, b);
    int ra = a.rank(), rb = b.rank();
    LaurentMatrix m = smat_zero(ra * rb, ra * rb, a.q);
    // basis e_i (x) f_j at index i*rb + j
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < rb; ++j) {
            int col = i * rb + j;
            for (int k = 0; k < ra; ++k)
                if (!a.A(k, i).is_exact_zero()) m(k * rb + j, col) += a.A(k, i);
            for (int l = 0; l < rb; ++l)
                if (!b.A(l, j).is_exact_zero()) m(i * rb + l, col) += b.A(l, j);
        }
    return LambdaConnection(a.q, m, a.lambda0);
}

LambdaConnection shear(const LambdaConnection& m, const std::vector<int>& indices, int power)
{
    if (power == 0) return m;
    std::vector<int> k(m.rank(), 0);
    for (int i : indices) {
        if (i < 0 || i >= m.rank()) fail(ErrorKind::InvalidArgument, "shear index out of range");
        k[i] = power;
    }
    // diagonal gauge: entries scale by t^(k_j - k_i), diagonal gains k_i * lambda
    LambdaConnection r = m;
    ParamScalar lam = m.lambda_scalar();
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j)
            if (k[j] != k[i]) r.A(i, j) = r.A(i, j).shifted(k[j] - k[i]);
    for (int i = 0; i < m.rank(); ++i)
        if (k[i] != 0) r.A(i, i) += Series::constant(lam * ParamScalar(k[i]), m.q);
    return r;
}

LambdaConnection with_precision(const LambdaConnection& m, int p)
{
    return LambdaConnection(m.q, smat_with_precision(m.A, p), m.lambda0);
}

LambdaConnection exponential_module(const ExpFactor& phi)
{
    LaurentMatrix a = smat_zero(1, 1, phi.q());
    a(0, 0) = phi.theta_series();
    return LambdaConnection(phi.q(), a);
}

LambdaConnection constant_module(const ScalarMat& r, int q)
{
    return LambdaConnection(q, smat_from_constant(r, q));
}

}  // namespace wildcycle

#include "wildcycle/newton.hpp"

#include "wildcycle/errors.hpp"

#include <algorithm>
#include <numeric>

namespace wildcycle {

int NewtonPolygon::rank() const
{
    int r = 0;
    for (const auto& s : slopes) r += s.length;
    return r;
}

int NewtonPolygon::regular_length() const
{
    for (const auto& s : slopes)
        if (s.slope == 0) return s.length;
    return 0;
}

mpq_class NewtonPolygon::max_slope() const
{
    return slopes.empty() ? mpq_class(0) : slopes.back().slope;
}

int NewtonPolygon::relative_q() const
{
    long q = 1;
    for (const auto& s : slopes) q = std::lcm(q, s.slope.get_den().get_si());
    return static_cast<int>(q);
}

NewtonPolygon newton_from_coefficients(const std::vector<Series>& c, int module_q)
{
    int n = static_cast<int>(c.size()) - 1;
    struct Pt {
        int j;
        mpq_class v;
    };
    std::vector<Pt> pts;
    std::vector<Pt> unsure;
    for (int j = 0; j < n; ++j) {
        if (c[j].is_exact_zero()) continue;
        if (c[j].known_zero())
            unsure.push_back({j, mpq_class(c[j].precision())});
        else
            pts.push_back({j, mpq_class(c[j].valuation())});
    }
    pts.push_back({n, 0});
    // lower convex hull, left to right
    std::vector<Pt> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull.back();
            // remove b when it lies on or above segment a-p
            mpq_class lhs = (b.v - a.v) * (p.j - a.j);
            mpq_class rhs = (p.v - a.v) * (b.j - a.j);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    // an unknown coefficient must not be able to dip below the hull
    for (const auto& u : unsure) {
        for (size_t s = 0; s + 1 < hull.size(); ++s) {
            const Pt& a = hull[s];
            const Pt& b = hull[s + 1];
            if (u.j < a.j || u.j > b.j) continue;
            mpq_class line = a.v + (b.v - a.v) * (u.j - a.j) / (b.j - a.j);
            if (u.v < line) {
                Error e(ErrorKind::InsufficientTruncation, "Newton polygon not certified at this truncation");
                throw e;
            }
        }
        if (u.j < hull.front().j) {
            // a root at the origin that may be an unknown small term: any value >= precision
            // could create a segment; certify only if the would-be slope is <= 0
            const Pt& a = hull.front();
            mpq_class sl = (a.v - u.v) / (a.j - u.j);
            if (sl > 0) {
                Error e(ErrorKind::InsufficientTruncation, "Newton polygon not certified at this truncation");
                throw e;
            }
        }
    }
    NewtonPolygon np;
    np.module_q = module_q;
    int regular = hull.front().j;  // zero roots
    std::vector<NewtonSlope> pos;
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        int len = hull[s + 1].j - hull[s].j;
        mpq_class sl = (hull[s + 1].v - hull[s].v) / len;
        if (sl <= 0)
            regular += len;
        else
            pos.push_back({sl, len});
    }
    if (regular > 0) np.slopes.push_back({mpq_class(0), regular});
    for (auto& p : pos) np.slopes.push_back(p);
    return np;
}

std::vector<Series> series_char_poly(const LaurentMatrix& a)
{
    return char_poly(a, Series::constant(ParamScalar(1), smat_q(a)));
}

namespace {

std::vector<std::vector<int>> candidate_vectors(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = 1;
    out.push_back(v);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    out.push_back(v);
    for (int k = 0; k < n; ++k) {
        std::vector<int> e(n, 0);
        e[k] = 1;
        out.push_back(e);
    }
    unsigned s = 12345;
    for (int t = 0; t < 6; ++t) {
        for (int i = 0; i < n; ++i) {
            s = s * 1103515245u + 12345u;
            v[i] = static_cast<int>((s >> 16) % 7) - 3;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

CyclicFrame cyclic_frame(const LaurentMatrix& a, const ParamScalar& lam, int cap)
{
    int n = a.rows();
    int q = smat_q(a);
    std::optional<Error> last;
    for (const auto& cand : candidate_vectors(n)) {
        LaurentMatrix cols = smat_zero(n, n + 1, q);
        LaurentMatrix v = smat_zero(n, 1, q);
        for (int i = 0; i < n; ++i)
            if (cand[i] != 0) v(i, 0) = Series::constant(ParamScalar(cand[i]), q);
        for (int j = 0; j <= n; ++j) {
            cols.set_block(0, j, v);
            LaurentMatrix nv = a * v;
            if (!lam.is_zero()) {
                LaurentMatrix th = smat_theta(v);
                for (int i = 0; i < n; ++i) nv(i, 0) += th(i, 0).scaled(lam);
            }
            v = nv;
        }
        LaurentMatrix c = cols.block(0, 0, n, n);
        try {
            LaurentMatrix cinv = smat_inverse(c, cap);
            LaurentMatrix tail = cinv * cols.block(0, n, n, 1);
            CyclicFrame f;
            f.C = c;
            f.companion = smat_zero(n, n, q);
            for (int j = 0; j + 1 < n; ++j) f.companion(j + 1, j) = Series::constant(ParamScalar(1), q);
            for (int i = 0; i < n; ++i) {
                f.companion(i, n - 1) = tail(i, 0);
                f.tail.push_back(tail(i, 0));
            }
            return f;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularGauge && e.kind() != ErrorKind::InsufficientTruncation) throw;
            last = e;
        }
    }
    if (last) throw *last;
    fail(ErrorKind::Internal, "no cyclic vector found");
}

std::vector<Series> companion_polynomial(const CyclicFrame& f)
{
    int n = static_cast<int>(f.tail.size());
    std::vector<Series> c(n + 1);
    for (int i = 0; i < n; ++i) c[i] = -f.tail[i];
    c[n] = Series::constant(ParamScalar(1), smat_q(f.companion));
    return c;
}

NewtonPolygon newton_polygon_module(const LambdaConnection& m, int cap)
{
    if (m.is_higgs()) return newton_from_coefficients(series_char_poly(m.A), m.q);
    if (smat_valuation(m.A) >= 0) {
        // a logarithmic lattice: regular singular, all slopes zero
        NewtonPolygon np;
        np.module_q = m.q;
        np.slopes.push_back({mpq_class(0), m.rank()});
        return np;
    }
    if (m.rank() == 1) return newton_from_coefficients({-m.A(0, 0), Series::constant(ParamScalar(1), m.q)}, m.q);
    CyclicFrame f = cyclic_frame(m.A, m.lambda_scalar(), cap);
    return newton_from_coefficients(companion_polynomial(f), m.q);
}

NewtonPolygon newton_polygon(const LambdaConnection& m, const Cyclotomic& lambda0, int cap)
{
    return newton_polygon_module(restrict_lambda(m, lambda0), cap);
}

}  // namespace wildcycle

#include "wildcycle/turrittin.hpp"

#include "wildcycle/errors.hpp"
#include "wildcycle/roots.hpp"

#include <algorithm>
#include <cstdlib>

namespace wildcycle {

LaurentMatrix FormalDecomposition::target() const
{
    int n = rank();
    LaurentMatrix t = smat_zero(n, n, q_used);
    int off = 0;
    for (const auto& s : summands) {
        int r = s.rank();
        Series th = s.phi.at_ramification(q_used).theta_series();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Series e = s.regular.A(i, j);
                if (i == j) e += th;
                t(off + i, off + j) = e;
            }
        off += r;
    }
    return t;
}

int FormalDecomposition::rank() const
{
    int n = 0;
    for (const auto& s : summands) n += s.rank();
    return n;
}

int required_truncation(int rank, int q, int max_pole, int t_out)
{
    return t_out + 2 * rank * q * std::max(1, max_pole) + 2;
}

ScalarMat eigen_separation(const ScalarMat& a0, const ParamScalar& c, int& n1)
{
    int n = a0.rows();
    ScalarMat s = a0 - scalar_identity(n).scaled(c);
    ScalarMat p = mat_pow(s, n);
    ScalarMat k = kernel_basis(p);
    ScalarMat im = column_basis(p);
    n1 = k.cols();
    return hstack(k, im);
}

SplitResult sylvester_split(const LaurentMatrix& a, int n1, const ParamScalar& lam)
{
    int n = a.rows();
    int n2 = n - n1;
    int q = smat_q(a);
    int v = smat_valuation(a);
    int k = -v;
    check_internal(k >= 1, "sylvester split needs a pole");
    int K = smat_precision(a) + k;
    check_internal(K < kExact / 2, "sylvester split on an exact matrix");
    std::vector<ScalarMat> a11(K), a12(K), a21(K), a22(K);
    for (int m = 0; m < K; ++m) {
        ScalarMat c = smat_coeff(a, m - k);
        a11[m] = c.block(0, 0, n1, n1);
        a12[m] = c.block(0, n1, n1, n2);
        a21[m] = c.block(n1, 0, n2, n1);
        a22[m] = c.block(n1, n1, n2, n2);
    }
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            check_internal(a12[0](i, j).is_zero() && a21[0](j, i).is_zero(), "leading matrix not block diagonal");
    SylvesterSolver<ParamScalar> solx(a11[0], a22[0]);
    SylvesterSolver<ParamScalar> soly(a22[0], a11[0]);
    std::vector<ScalarMat> X(K, ScalarMat(n1, n2, ParamScalar(0))), Y(K, ScalarMat(n2, n1, ParamScalar(0)));
    std::vector<ScalarMat> W(K, ScalarMat(n2, n2, ParamScalar(0))), V(K, ScalarMat(n1, n1, ParamScalar(0)));
    for (int s = 1; s < K; ++s) {
        ScalarMat rx = -a12[s];
        ScalarMat ry = -a21[s];
        for (int m = 1; m < s; ++m) {
            rx -= a11[m] * X[s - m] - X[s - m] * a22[m];
            ry -= a22[m] * Y[s - m] - Y[s - m] * a11[m];
        }
        if (s - k >= 1) {
            ParamScalar f = lam * ParamScalar(s - k);
            if (!f.is_zero()) {
                rx -= X[s - k].scaled(f);
                ry -= Y[s - k].scaled(f);
            }
        }
        for (int i = 1; i < s; ++i) {
            rx += X[i] * W[s - i];
            ry += Y[i] * V[s - i];
        }
        X[s] = solx.solve(rx);
        Y[s] = soly.solve(ry);
        for (int m = 0; m < s; ++m) {
            W[s] += a21[m] * X[s - m];
            V[s] += a12[m] * Y[s - m];
        }
    }
    auto to_series = [&](const std::vector<ScalarMat>& c, int r, int cc) {
        LaurentMatrix out = smat_zero(r, cc, q);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < cc; ++j) {
                std::vector<ParamScalar> v(K);
                for (int s = 1; s < K; ++s) v[s] = c[s](i, j);
                out(i, j) = Series::from_coeffs(q, 0, v, K);
            }
        return out;
    };
    LaurentMatrix xs = to_series(X, n1, n2), ys = to_series(Y, n2, n1);
    SplitResult r;
    LaurentMatrix A11 = a.block(0, 0, n1, n1), A12 = a.block(0, n1, n1, n2);
    LaurentMatrix A21 = a.block(n1, 0, n2, n1), A22 = a.block(n1, n1, n2, n2);
    r.b1 = A11 + A12 * ys;
    r.b2 = A22 + A21 * xs;
    r.gauge = smat_identity(n, q);
    r.gauge.set_block(0, n1, xs);
    r.gauge.set_block(n1, 0, ys);
    return r;
}

namespace {

struct Block {
    LaurentMatrix A;
    LaurentMatrix G;
    ExpFactor phi;
    int q;
};

struct Ctx {
    ParamScalar lam;
    bool higgs;
    int order;
    int max_steps;
};

Cyclotomic lambda_free(const ParamScalar& p)
{
    if (!p.is_constant())
        fail(ErrorKind::LambdaDependentSpectrum, "leading eigenvalue data depends on lambda: " + p.to_string());
    return p.constant_value();
}

int inverse_cap(const LaurentMatrix& a)
{
    int p = smat_precision(a);
    int v = std::min(0, smat_valuation(a));
    return p - v + 4 * a.rows() * (1 - v);
}

void ramify_block(Block& b, int d)
{
    if (d == 1) return;
    b.A = smat_ramified(b.A, d).map([d](const Series& s) { return s.scaled(ParamScalar(d)); });
    b.G = smat_ramified(b.G, d);
    b.q *= d;
    b.phi = b.phi.at_ramification(b.q);
}

LaurentMatrix shear_matrix(const LaurentMatrix& a, const std::vector<int>& ks, const ParamScalar& lam, int q)
{
    int n = a.rows();
    LaurentMatrix r = smat_with_q(a, q);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (ks[i] != ks[j]) r(i, j) = r(i, j).shifted(ks[j] - ks[i]);
    for (int i = 0; i < n; ++i)
        if (ks[i] != 0 && !lam.is_zero()) r(i, i) += Series::constant(lam * ParamScalar(ks[i]), q);
    return r;
}

LaurentMatrix lattice_basis(const LaurentMatrix& w)
{
    int n = w.rows();
    int m = w.cols();
    std::vector<std::vector<Series>> cols(m, std::vector<Series>(n));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) cols[j][i] = w(i, j);
    std::vector<bool> active(m, true);
    LaurentMatrix out = smat_zero(n, n, smat_q(w));
    for (int r = 0; r < n; ++r) {
        int piv = -1;
        bool unknown = false;
        for (int j = 0; j < m; ++j) {
            if (!active[j]) continue;
            const Series& s = cols[j][r];
            if (s.known_zero()) {
                unknown = unknown || !s.is_exact();
                continue;
            }
            if (piv < 0 || s.valuation() < cols[piv][r].valuation()) piv = j;
        }
        if (piv < 0) {
            if (unknown) fail(ErrorKind::InsufficientTruncation, "lattice saturation not certified at this truncation");
            fail(ErrorKind::Internal, "lattice generators do not have full rank");
        }
        Series inv = cols[piv][r].inverse();
        for (int j = 0; j < m; ++j) {
            if (!active[j] || j == piv || cols[j][r].is_exact_zero()) continue;
            Series f = cols[j][r] * inv;
            for (int i = 0; i < n; ++i)
                if (!cols[piv][i].is_exact_zero()) cols[j][i] -= f * cols[piv][i];
        }
        active[piv] = false;
        for (int i = 0; i < n; ++i) out(i, r) = cols[piv][i];
    }
    return out;
}

// nilpotent leading term for lambda != 0: cyclic frame, ramification and shear
bool cyclic_step(Block& b, Ctx& ctx)
{
    CyclicFrame f = cyclic_frame(b.A, ctx.lam, inverse_cap(b.A));
    NewtonPolygon np = newton_from_coefficients(companion_polynomial(f), b.q);
    b.G = b.G * f.C;
    b.A = f.companion;
    mpq_class kappa = np.max_slope();
    if (kappa == 0) {
        check_internal(smat_valuation(b.A) >= 0, "slope zero companion frame with a pole");
        return true;
    }
    int d = static_cast<int>(kappa.get_den().get_si());
    int p = static_cast<int>(kappa.get_num().get_si());
    ramify_block(b, d);
    int n = b.A.rows();
    std::vector<int> ks(n);
    for (int j = 0; j < n; ++j) ks[j] = j * p;
    b.A = shear_matrix(b.A, ks, ctx.lam, b.q);
    b.G = b.G * smat_diag_powers(ks, b.q);
    return false;
}

// nilpotent leading term at lambda = 0: saturate the lattice under t^p A
bool lattice_step(Block& b, Ctx&)
{
    NewtonPolygon np = newton_from_coefficients(series_char_poly(b.A), b.q);
    mpq_class kappa = np.max_slope();
    int d = static_cast<int>(kappa.get_den().get_si());
    int p = static_cast<int>(kappa.get_num().get_si());
    ramify_block(b, d);
    int n = b.A.rows();
    LaurentMatrix B = smat_shifted(smat_with_q(b.A, b.q), p);
    LaurentMatrix gens = smat_identity(n, b.q);
    LaurentMatrix pw = smat_identity(n, b.q);
    for (int j = 1; j < n; ++j) {
        pw = B * pw;
        gens = hstack(gens, pw);
    }
    LaurentMatrix P = lattice_basis(gens);
    b.A = smat_gauge(b.A, P, ParamScalar(0));
    b.G = b.G * P;
    if (kappa == 0) {
        check_internal(smat_valuation(b.A) >= 0, "saturated lattice still has a pole");
        return true;
    }
    return false;
}

CycPoly constant_poly(const std::vector<ParamScalar>& c)
{
    std::vector<Cyclotomic> v;
    for (const auto& x : c) v.push_back(lambda_free(x));
    return CycPoly(v);
}

void process(Block b, Ctx& ctx, std::vector<Block>& work, std::vector<Block>& done)
{
    int total = b.G.rows();
    for (int step = 0; step < ctx.max_steps; ++step) {
        int n = b.A.rows();
        int v = smat_valuation(b.A);
        if (v >= 0) {
            done.push_back(std::move(b));
            return;
        }
        int k = -v;
        if (n == 1) {
            Series& e = b.A(0, 0);
            std::map<int, Cyclotomic> polar;
            for (int m = v; m < 0; ++m) {
                ParamScalar c = e.coeff(m);
                if (c.is_zero()) continue;
                polar[m] = lambda_free(c) / Cyclotomic(static_cast<long>(m));
                e -= Series::monomial(c, m, b.q);
            }
            b.phi = b.phi + ExpFactor(b.q, polar);
            done.push_back(std::move(b));
            return;
        }
        ScalarMat a0 = smat_coeff(b.A, v);
        CycPoly chi = constant_poly(char_poly(a0, ParamScalar(1)));
        RootSet rs = split_completely(chi, ctx.order);
        ctx.order = lcm_int(ctx.order, rs.order);
        if (rs.roots.size() >= 2) {
            int n1 = 0;
            ScalarMat P = eigen_separation(a0, ParamScalar(rs.roots[0].first), n1);
            LaurentMatrix pm = smat_from_constant(P, b.q);
            LaurentMatrix pinv = smat_from_constant(inverse_of(P), b.q);
            LaurentMatrix a2 = pinv * b.A * pm;
            SplitResult sr = sylvester_split(a2, n1, ctx.lam);
            LaurentMatrix g = b.G * pm * sr.gauge;
            work.push_back(Block{sr.b1, g.block(0, 0, total, n1), b.phi, b.q});
            work.push_back(Block{sr.b2, g.block(0, n1, total, n - n1), b.phi, b.q});
            return;
        }
        const Cyclotomic& c = rs.roots[0].first;
        if (!c.is_zero()) {
            b.phi = b.phi + ExpFactor(b.q, {{-k, -c / Cyclotomic(static_cast<long>(k))}});
            Series sub = Series::monomial(ParamScalar(c), -k, b.q);
            for (int i = 0; i < n; ++i) b.A(i, i) -= sub;
            continue;
        }
        bool terminal = ctx.higgs ? lattice_step(b, ctx) : cyclic_step(b, ctx);
        if (terminal) {
            done.push_back(std::move(b));
            return;
        }
    }
    fail(ErrorKind::NonTerminating, "reduction step bound exceeded");
}

}  // namespace

namespace {

FormalDecomposition decompose_at(const LambdaConnection& m, const DecompOptions& opt)
{
    Ctx ctx{m.lambda_scalar(), m.is_higgs(), m.common_order(), opt.max_steps};
    if (m.lambda0) ctx.order = lcm_int(ctx.order, m.lambda0->order());
    LaurentMatrix a = m.lambda0 ? restrict_lambda(m, *m.lambda0).A : m.A;
    if (smat_precision(a) >= kExact) a = smat_with_precision(a, opt.exact_cap);
    int n = m.rank();
    std::vector<Block> work{Block{a, smat_identity(n, m.q), ExpFactor(m.q), m.q}};
    std::vector<Block> done;
    while (!work.empty()) {
        Block b = std::move(work.back());
        work.pop_back();
        process(std::move(b), ctx, work, done);
    }
    int Q = m.q;
    for (const auto& b : done) Q = lcm_int(Q, b.q);
    for (auto& b : done) ramify_block(b, Q / b.q);
    std::stable_sort(done.begin(), done.end(), [](const Block& x, const Block& y) { return exp_factor_less(x.phi, y.phi); });
    // equal factors from different branches are merged into one summand
    std::vector<Block> merged;
    for (auto& b : done) {
        if (!merged.empty() && merged.back().phi == b.phi) {
            Block& l = merged.back();
            LaurentMatrix na = smat_zero(l.A.rows() + b.A.rows(), l.A.rows() + b.A.rows(), Q);
            na.set_block(0, 0, l.A);
            na.set_block(l.A.rows(), l.A.rows(), b.A);
            l.A = na;
            l.G = hstack(l.G, b.G);
        } else {
            merged.push_back(std::move(b));
        }
    }
    FormalDecomposition d;
    d.q_used = Q;
    d.input_q = m.q;
    d.lambda0 = m.lambda0;
    d.gauge = smat_zero(n, 0, Q);
    int prec = kExact;
    for (auto& b : merged) {
        d.gauge = hstack(d.gauge, smat_with_q(b.G, Q));
        Summand s{b.phi.at_ramification(Q), LambdaConnection(Q, b.A, m.lambda0)};
        prec = std::min(prec, s.regular.precision());
        ctx.order = lcm_int(ctx.order, s.phi.common_order());
        d.summands.push_back(std::move(s));
    }
    d.field_order = ctx.order;
    // the gauge is only known to finite order; A G and G T lose their poles and G^-1 its pole again
    int gp = smat_precision(d.gauge);
    if (gp < kExact) {
        LaurentMatrix gi = smat_inverse(d.gauge, std::max(gp, 1));
        int av = std::min(0, smat_valuation(a)) * (Q / m.q);
        prec = std::min(prec, gp + std::min({0, av, smat_valuation(d.target())}) + std::min(0, smat_valuation(gi)));
    }
    d.guaranteed_order = prec;
    return d;
}

}  // namespace

FormalDecomposition formal_decompose(const LambdaConnection& m, const DecompOptions& opt)
{
    bool exact = m.precision() >= kExact;
    DecompOptions o = opt;
    for (;;) {
        try {
            return decompose_at(m, o);
        } catch (Error& e) {
            // exact input: the working precision is ours to raise
            if (e.kind() != ErrorKind::InsufficientTruncation || !exact || o.exact_cap >= o.max_cap) {
                if (e.kind() == ErrorKind::InsufficientTruncation && e.required_truncation < 0)
                    e.required_truncation = required_truncation(m.rank(), std::max(m.q, m.rank()), std::max(1, m.pole_order()), 1);
                throw;
            }
            o.exact_cap = std::min(2 * o.exact_cap, o.max_cap);
        }
    }
}

LeadingSplit leading_split(const LambdaConnection& m, const std::vector<Cyclotomic>& group)
{
    int n = m.rank();
    int v = smat_valuation(m.A);
    if (v >= 0) fail(ErrorKind::InvalidArgument, "leading_split needs a pole");
    ScalarMat a0 = smat_coeff(m.A, v);
    ScalarMat first(n, 0), rest = scalar_identity(n);
    int n1 = 0;
    for (const auto& c : group) {
        ScalarMat s = mat_pow(a0 - scalar_identity(n).scaled(ParamScalar(c)), n);
        ScalarMat k = kernel_basis(s);
        if (k.cols() == 0) fail(ErrorKind::SpectrumNotSplit, c.to_string() + " is not a leading eigenvalue");
        first = hstack(first, k);
        n1 += k.cols();
        rest = s * rest;
    }
    if (n1 == 0 || n1 == n) fail(ErrorKind::SpectrumNotSplit, "the eigenvalue group does not split the leading spectrum");
    ScalarMat im = column_basis(rest);
    ScalarMat P = hstack(first, im);
    if (P.cols() != n || rank_of(P) != n) fail(ErrorKind::SpectrumNotSplit, "eigenvalue groups intersect");
    LaurentMatrix pm = smat_from_constant(P, m.q);
    LaurentMatrix a2 = smat_from_constant(inverse_of(P), m.q) * m.A * pm;
    if (smat_precision(a2) >= kExact) a2 = smat_with_precision(a2, DecompOptions{}.exact_cap);
    SplitResult sr = sylvester_split(a2, n1, m.lambda_scalar());
    LeadingSplit out;
    out.first = LambdaConnection(m.q, sr.b1, m.lambda0);
    out.second = LambdaConnection(m.q, sr.b2, m.lambda0);
    out.gauge = pm * sr.gauge;
    return out;
}

VerifyReport verify_decomposition(const LambdaConnection& m, const FormalDecomposition& d, int order_limit)
{
    VerifyReport rep;
    rep.claimed_order = d.guaranteed_order;
    LambdaConnection pulled = ramify_pullback(m, d.q_used / m.q);
    LaurentMatrix a = pulled.A;
    if (smat_precision(a) >= kExact) a = smat_with_precision(a, std::max(d.guaranteed_order, 0) + 8 * m.rank() + 8);
    LaurentMatrix g = d.gauge;
    int slack = 2 * m.rank() * (std::abs(std::min(0, smat_valuation(g))) + 1);
    if (order_limit < kExact / 2 && smat_precision(g) > order_limit + slack) g = smat_with_precision(g, order_limit + slack);
    if (order_limit < kExact / 2 && smat_precision(a) > order_limit + slack) a = smat_with_precision(a, order_limit + slack);
    // A G + lam theta(G) - G T avoids inverting G; the residual of G^-1 A G + ... is G^-1 times it
    LaurentMatrix t = d.target();
    ParamScalar lam = m.lambda_scalar();
    LaurentMatrix r = a * g + smat_theta(g).map([&](const Series& s) { return s.scaled(lam); }) - g * t;
    int ginv_val = 0;
    try {
        LaurentMatrix gi = smat_inverse(g, std::max(smat_precision(g), 1));
        ginv_val = std::min(0, smat_valuation(gi));
    } catch (const Error& e) {
        rep.findings.push_back(std::string("gauge not invertible: ") + e.what());
        return rep;
    }
    int n = r.rows();
    int certified = kExact;
    int resid = kExact;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Series& x = r(i, j);
            int p = x.precision() >= kExact ? kExact : x.precision() + ginv_val;
            p = std::min(p, order_limit);
            certified = std::min(certified, p);
            if (!x.known_zero() && x.valuation() + ginv_val < p) resid = std::min(resid, x.valuation() + ginv_val);
        }
    rep.certified_order = certified;
    rep.residual_valuation = resid;
    bool ok = resid >= certified;
    if (!ok) rep.findings.push_back("nonzero residual at order " + std::to_string(resid));
    for (size_t s = 0; s < d.summands.size(); ++s)
        if (smat_valuation(d.summands[s].regular.A) < 0) {
            ok = false;
            rep.findings.push_back("summand " + std::to_string(s) + " is not regular in its frame");
        }
    for (size_t s = 0; s < d.summands.size(); ++s)
        for (size_t u = s + 1; u < d.summands.size(); ++u)
            if (d.summands[s].phi == d.summands[u].phi) {
                ok = false;
                rep.findings.push_back("repeated exponential factor");
            }
    rep.pass = ok;
    return rep;
}

}  // namespace wildcycle

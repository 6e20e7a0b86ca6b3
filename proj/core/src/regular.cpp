#include "wildcycle/regular.hpp"

#include "wildcycle/errors.hpp"
#include "wildcycle/newton.hpp"
#include "wildcycle/roots.hpp"
#include "wildcycle/turrittin.hpp"

#include <algorithm>

namespace wildcycle {

ParamScalar RegularModel::star_value(const ComplexExponent& b) const
{
    return lambda0 ? ParamScalar(star_at(b, *lambda0)) : star(b);
}

bool RegularityVerdict::regular() const
{
    for (const auto* v : {&newton_slopes_zero, &v0_full, &decomposition_trivial})
        if (v->has_value() && !**v) return false;
    return agree;
}

namespace {

// divide by (X - s) once; false when the remainder is nonzero
bool divide_linear(std::vector<ParamScalar>& c, const ParamScalar& s)
{
    int n = static_cast<int>(c.size()) - 1;
    std::vector<ParamScalar> b(n);
    b[n - 1] = c[n];
    for (int k = n - 1; k >= 1; --k) b[k - 1] = c[k] + s * b[k];
    ParamScalar rem = c[0] + s * b[0];
    c = std::move(b);
    return rem.is_zero();
}

void sort_exponents(std::vector<ExponentData>& ex, const std::optional<Cyclotomic>& lambda0)
{
    std::sort(ex.begin(), ex.end(), [&](const ExponentData& a, const ExponentData& b) {
        mpq_class la = lambda0 ? ell(a.beta, *lambda0) : a.beta.re;
        mpq_class lb = lambda0 ? ell(b.beta, *lambda0) : b.beta.re;
        if (la != lb) return la < lb;
        return a.beta < b.beta;
    });
}

bool integer_difference(const ComplexExponent& a, const ComplexExponent& b)
{
    ComplexExponent d = a - b;
    return d.im == 0 && d.re.get_den() == 1;
}

}  // namespace

std::vector<ExponentData> residue_exponents(const ScalarMat& r0, const std::optional<Cyclotomic>& lambda0, int base_order)
{
    int n = r0.rows();
    std::vector<ExponentData> out;
    if (lambda0 && lambda0->is_zero())
        fail(ErrorKind::InvalidArgument, "exponents are not determined by a Higgs residue");
    if (lambda0) {
        CycMat r = r0.map([&](const ParamScalar& x) { return x.eval(*lambda0); });
        std::vector<Cyclotomic> cp = char_poly(r, Cyclotomic(1));
        RootSet rs = split_completely(CycPoly(cp), lcm_int(base_order, lambda0->order()));
        for (const auto& [v, mult] : rs.roots) {
            ComplexExponent b = exponent_from_value(v, *lambda0);
            if (star_at(b, *lambda0) != v) fail(ErrorKind::NotStarShaped, "eigenvalue " + v.to_string() + " is not of the form beta*lambda");
            out.push_back({b, mult});
        }
        sort_exponents(out, lambda0);
        return out;
    }
    std::vector<ParamScalar> cp = char_poly(r0, ParamScalar(1));
    // a real evaluation point mu where the coefficients are defined
    long mu = 1;
    auto defined = [&](long x) {
        for (const auto& c : cp)
            if (!c.defined_at(Cyclotomic(x))) return false;
        return true;
    };
    while (!defined(mu)) ++mu;
    std::vector<Cyclotomic> at;
    for (const auto& c : cp) at.push_back(c.eval(Cyclotomic(mu)));
    RootSet rs = split_completely(CycPoly(at), base_order);
    std::vector<ParamScalar> rest = cp;
    int found = 0;
    for (const auto& [v, mult] : rs.roots) {
        mpq_class x, y;
        if (!v.gaussian_parts(x, y)) fail(ErrorKind::NotStarShaped, "residue eigenvalue " + v.to_string() + " at lambda=" + std::to_string(mu) + " is not Gaussian");
        ComplexExponent b(x / mu, 2 * y / (mu * mu + 1));
        ParamScalar s = star(b);
        for (int k = 0; k < mult; ++k)
            if (!divide_linear(rest, s))
                fail(ErrorKind::NotStarShaped, "residue eigenvalues are not of the form beta*lambda (expected factor X - (" + s.to_string() + "))");
        found += mult;
        out.push_back({b, mult});
    }
    check_internal(found == n, "residue eigenvalue count");
    sort_exponents(out, lambda0);
    return out;
}

ReductionResult reduce_to_constant(const LambdaConnection& m, int exact_cap)
{
    if (m.is_higgs()) fail(ErrorKind::InvalidArgument, "reduce_to_constant needs lambda != 0");
    if (smat_valuation(m.A) < 0) fail(ErrorKind::InvalidArgument, "reduce_to_constant needs pole order at most one");
    int n = m.rank();
    int q = m.q;
    ParamScalar lam = m.lambda_scalar();
    LambdaConnection cur = m.lambda0 ? restrict_lambda(m, *m.lambda0) : m;
    if (smat_precision(cur.A) >= kExact) cur = with_precision(cur, exact_cap * q);
    LaurentMatrix G = smat_identity(n, q);
    int order = m.common_order();
    std::vector<ExponentData> ex;
    for (int iter = 0;; ++iter) {
        if (iter > 64 * n) fail(ErrorKind::NonTerminating, "resonance removal did not terminate");
        ScalarMat r0 = smat_coeff(cur.A, 0);
        ex = residue_exponents(r0, m.lambda0, order);
        int low = -1;
        for (size_t i = 0; i < ex.size(); ++i)
            for (size_t j = 0; j < ex.size(); ++j)
                if (i != j && integer_difference(ex[j].beta, ex[i].beta) && ex[j].beta.re > ex[i].beta.re)
                    if (low < 0 || ex[i].beta.re < ex[low].beta.re) low = static_cast<int>(i);
        if (low < 0) break;
        // shear the lowest resonant exponent up by one
        int n1 = 0;
        ParamScalar e = m.lambda0 ? ParamScalar(star_at(ex[low].beta, *m.lambda0)) : star(ex[low].beta);
        ScalarMat P = eigen_separation(r0, e, n1);
        cur.A = smat_from_constant(inverse_of(P), q) * cur.A * smat_from_constant(P, q);
        G = G * smat_from_constant(P, q);
        std::vector<int> idx(n1);
        for (int i = 0; i < n1; ++i) idx[i] = i;
        cur = shear(cur, idx, 1);
        std::vector<int> ks(n, 0);
        for (int i = 0; i < n1; ++i) ks[i] = 1;
        G = G * smat_diag_powers(ks, q);
    }
    // lower triangular frame: generalized eigenspaces in Jordan chain order
    ScalarMat R0 = smat_coeff(cur.A, 0);
    ScalarMat P2(n, 0);
    std::vector<int> offs;
    for (const auto& e : ex) {
        ParamScalar s = m.lambda0 ? ParamScalar(star_at(e.beta, *m.lambda0)) : star(e.beta);
        ScalarMat sh = R0 - scalar_identity(n).scaled(s);
        ScalarMat B = kernel_basis(mat_pow(sh, n));
        check_internal(B.cols() == e.multiplicity, "generalized eigenspace dimension");
        ScalarMat y;
        check_internal(solve_in_span(B, sh * B, y), "eigenspace not invariant");
        JordanData<ParamScalar> jd = jordan_chains(y);
        offs.push_back(P2.cols());
        P2 = hstack(P2, B * jd.basis);
    }
    ScalarMat P2inv = inverse_of(P2);
    cur.A = smat_from_constant(P2inv, q) * cur.A * smat_from_constant(P2, q);
    G = G * smat_from_constant(P2, q);
    // order-by-order constant gauge A Q + lam t Q' = Q R with R the residue;
    // R is lower triangular so each Q_k follows by substitution
    ScalarMat R = smat_coeff(cur.A, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) check_internal(R(i, j).is_zero(), "residue frame is not triangular");
    int prec = smat_precision(cur.A);
    std::vector<ScalarMat> A(prec), Q(prec);
    for (int k = 0; k < prec; ++k) A[k] = smat_coeff(cur.A, k);
    Q[0] = scalar_identity(n);
    for (int k = 1; k < prec; ++k) {
        ScalarMat rhs(n, n, ParamScalar(0));
        for (int j = 1; j <= k; ++j)
            if (!is_zero_matrix(A[j])) rhs -= A[j] * Q[k - j];
        ParamScalar shift = lam * ParamScalar(k);
        ScalarMat x(n, n, ParamScalar(0));
        if (!is_zero_matrix(rhs))
            for (int i = 0; i < n; ++i)
                for (int j = n - 1; j >= 0; --j) {
                    ParamScalar v = rhs(i, j);
                    for (int l = 0; l < i; ++l)
                        if (!R(i, l).is_zero() && !x(l, j).is_zero()) v -= R(i, l) * x(l, j);
                    for (int l = j + 1; l < n; ++l)
                        if (!R(l, j).is_zero() && !x(i, l).is_zero()) v += x(i, l) * R(l, j);
                    if (v.is_zero()) continue;
                    ParamScalar piv = R(i, i) - R(j, j) + shift;
                    if (piv.is_zero()) fail(ErrorKind::Internal, "resonance left after shearing");
                    x(i, j) = v / piv;
                }
        Q[k] = std::move(x);
    }
    LaurentMatrix qs = smat_zero(n, n, q);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<ParamScalar> v(prec);
            for (int k = 0; k < prec; ++k) v[k] = Q[k](i, j);
            qs(i, j) = Series::from_coeffs(q, 0, v, prec);
        }
    G = G * qs;
    ReductionResult res;
    RegularModel& rm = res.model;
    rm.q = q;
    rm.lambda0 = m.lambda0;
    rm.R = R;
    rm.exponents = ex;
    rm.offsets = offs;
    for (size_t k = 0; k < ex.size(); ++k) {
        int d = ex[k].multiplicity;
        ScalarMat blk = rm.R.block(offs[k], offs[k], d, d);
        rm.nilpotents.push_back(blk - scalar_identity(d).scaled(rm.star_value(ex[k].beta)));
    }
    res.gauge = G;
    res.gauge_order = smat_precision(res.gauge);
    return res;
}

std::vector<ComplexExponent> normalized_exponents(const RegularModel& rm)
{
    std::vector<ComplexExponent> out;
    for (const auto& e : rm.exponents) {
        ComplexExponent b = e.beta.normalized();
        if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

NearbyCycleDatum psi_beta(const RegularModel& rm, const ComplexExponent& beta)
{
    NearbyCycleDatum d;
    d.beta = beta;
    std::vector<size_t> hit;
    for (size_t k = 0; k < rm.exponents.size(); ++k)
        if (integer_difference(rm.exponents[k].beta, beta)) hit.push_back(k);
    for (size_t k : hit) d.dim += rm.exponents[k].multiplicity;
    d.N = ScalarMat(d.dim, d.dim, ParamScalar(0));
    int off = 0;
    for (size_t k : hit) {
        d.N.set_block(off, off, -rm.nilpotents[k]);
        off += rm.exponents[k].multiplicity;
    }
    if (d.dim > 0) {
        auto f = monodromy_filtration(d.N);
        d.weight_dims = f.weight_dims;
        d.primitive_dims = f.primitive_dims;
    }
    return d;
}

BernsteinProduct bernstein_product(const RegularModel& rm, int shift)
{
    if (shift < 0) fail(ErrorKind::InvalidArgument, "Bernstein shift must be nonnegative");
    BernsteinProduct bp;
    bp.coefficients = {ParamScalar(1)};
    for (int k = 0; k <= shift; ++k)
        for (size_t j = 0; j < rm.exponents.size(); ++j) {
            ComplexExponent b = rm.exponents[j].beta + ComplexExponent(k);
            int L = nilpotency_index(rm.nilpotents[j]);
            ParamScalar root = rm.star_value(b);
            bp.factors.push_back({b, L, root});
            for (int p = 0; p < L; ++p) {
                std::vector<ParamScalar> next(bp.coefficients.size() + 1);
                for (size_t i = 0; i < bp.coefficients.size(); ++i) {
                    next[i + 1] += bp.coefficients[i];
                    next[i] -= root * bp.coefficients[i];
                }
                bp.coefficients = std::move(next);
            }
        }
    return bp;
}

std::string BernsteinProduct::to_string() const
{
    std::string out;
    for (const auto& f : factors) {
        if (!out.empty()) out += "*";
        out += "(s - (" + f.root.to_string() + "))";
        if (f.power != 1) out += "^" + std::to_string(f.power);
    }
    return out.empty() ? "1" : out;
}

int v0_lattice_fiber_dim(const LambdaConnection& higgs)
{
    if (!higgs.is_higgs()) fail(ErrorKind::InvalidArgument, "v0_lattice_fiber_dim needs a Higgs field (lambda0 = 0)");
    return newton_polygon_module(higgs).regular_length();
}

RegularityVerdict regularity_test(const LambdaConnection& m)
{
    RegularityVerdict v;
    auto guarded = [&](const char* what, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            v.findings.push_back(std::string(what) + ": " + e.what());
        }
    };
    bool family = !m.lambda0.has_value();
    if (family || !m.lambda0->is_zero())
        guarded("newton", [&] {
            v.newton_slopes_zero = family ? newton_polygon(m, Cyclotomic(1)).all_zero() : newton_polygon_module(m).all_zero();
        });
    if (family || m.lambda0->is_zero())
        guarded("v0", [&] {
            LambdaConnection h = family ? restrict_lambda(m, Cyclotomic(0)) : m;
            v.v0_dim = v0_lattice_fiber_dim(h);
            v.v0_full = v.v0_dim == m.rank();
        });
    guarded("decomposition", [&] {
        FormalDecomposition d = formal_decompose(m);
        bool trivial = d.q_used == 1;
        for (const auto& s : d.summands)
            if (!s.phi.is_zero()) trivial = false;
        v.decomposition_trivial = trivial;
    });
    std::optional<bool> first;
    for (const auto* x : {&v.newton_slopes_zero, &v.v0_full, &v.decomposition_trivial}) {
        if (!x->has_value()) continue;
        if (!first) first = **x;
        else if (*first != **x) v.agree = false;
    }
    if (!v.agree) v.findings.push_back("criteria disagree");
    return v;
}

}  // namespace wildcycle

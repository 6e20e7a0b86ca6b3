#include "wildcycle/pairing.hpp"

#include "wildcycle/errors.hpp"

#include <algorithm>
#include <tuple>

namespace wildcycle {

bool ExpansionTerm::same_shape(const ExpansionTerm& o) const
{
    return phi == o.phi && beta == o.beta && ell == o.ell && kprime == o.kprime && ksecond == o.ksecond;
}

std::string ExpansionTerm::to_string() const
{
    std::string s = "(" + coeff.to_string() + ")";
    if (kprime) s += "*t^" + std::to_string(kprime);
    if (ksecond) s += "*tbar^" + std::to_string(ksecond);
    if (!phi.is_zero()) s += "*e(" + phi.to_string() + ")";
    if (beta != ComplexExponent()) s += "*|t|^(2*(" + beta.to_string() + ")*z/z)";
    if (ell) s += "*L^" + std::to_string(ell) + "/" + std::to_string(ell) + "!";
    return s;
}

ParamScalar MellinPole::location() const { return star(alpha) / ParamScalar::lambda(); }

Cyclotomic MellinPole::location_at(const Cyclotomic& lambda0) const
{
    if (lambda0.is_zero()) fail(ErrorKind::InvalidArgument, "pole locations are evaluated at lambda0 != 0");
    return location().eval(lambda0);
}

std::string MellinPole::to_string() const
{
    return "s = (" + alpha.to_string() + ")*z/z [" + location().to_string() + "], order " + std::to_string(order);
}

std::string WeightFactor::to_string() const
{
    return "|t|^(" + modulus_exponent.to_string() + ")*L^(" + log_power.get_str() + ")";
}

namespace {

auto shape_key(const ExpansionTerm& t)
{
    return std::make_tuple(t.phi.q(), t.phi.to_string(), t.beta.re, t.beta.im, t.ell, t.kprime, t.ksecond);
}

ParamScalar factorial_ratio(int top, int bottom)
{
    mpq_class r = 1;
    for (int k = bottom + 1; k <= top; ++k) r *= k;
    return ParamScalar(Cyclotomic(r));
}

}  // namespace

std::vector<ExpansionTerm> merge_terms(std::vector<ExpansionTerm> terms)
{
    std::stable_sort(terms.begin(), terms.end(), [](const ExpansionTerm& a, const ExpansionTerm& b) { return shape_key(a) < shape_key(b); });
    std::vector<ExpansionTerm> out;
    for (auto& t : terms) {
        if (!out.empty() && out.back().same_shape(t))
            out.back().coeff += t.coeff;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const ExpansionTerm& t) { return t.coeff.is_zero(); }), out.end());
    return out;
}

std::vector<MellinPole> mellin_poles(const std::vector<ExpansionTerm>& terms)
{
    // radial integral of r^{2(s+b+k)} (-log r^2)^l / l! gives 1/(s - alpha)^(l+1), alpha = -b-1-k
    std::map<std::pair<mpq_class, mpq_class>, std::map<int, ParamScalar>> acc;
    for (const auto& t : merge_terms(terms)) {
        if (!t.phi.is_zero()) continue;            // entire
        if (t.kprime != t.ksecond) continue;       // angular integral vanishes
        ComplexExponent a = -t.beta - ComplexExponent(1 + t.kprime);
        acc[{a.re, a.im}][t.ell] += t.coeff;
    }
    std::vector<MellinPole> out;
    for (auto& [key, pr] : acc) {
        MellinPole p;
        p.alpha = ComplexExponent(key.first, key.second);
        for (auto& [l, c] : pr)
            if (!c.is_zero()) {
                p.principal[l] = c;
                p.order = std::max(p.order, l + 1);
            }
        if (p.order > 0) out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), [](const MellinPole& a, const MellinPole& b) { return b.alpha < a.alpha; });
    return out;
}

std::vector<MellinPole> mellin_poles(const ExpansionTerm& term) { return mellin_poles(std::vector<ExpansionTerm>{term}); }

ExpansionTerm expansion_product(const ExpansionTerm& a, int m, int mbar, int n)
{
    if (m < 0 || mbar < 0 || n < 0) fail(ErrorKind::InvalidArgument, "expansion_product takes a monomial with nonnegative exponents");
    ExpansionTerm r = a;
    r.kprime += m;
    r.ksecond += mbar;
    r.ell += n;
    r.coeff = a.coeff * factorial_ratio(a.ell + n, a.ell);
    return r;
}

ExpansionTerm absorb_modulus(const ExpansionTerm& a)
{
    ExpansionTerm r = a;
    int k = std::min(a.kprime, a.ksecond);
    r.kprime -= k;
    r.ksecond -= k;
    r.beta = a.beta + ComplexExponent(k);
    return r;
}

std::vector<ExpansionTerm> apply_shifted_theta(const std::vector<ExpansionTerm>& terms, const ComplexExponent& beta0)
{
    ParamScalar lam = ParamScalar::lambda();
    std::vector<ExpansionTerm> out;
    for (const auto& t : terms) {
        if (!t.phi.is_zero()) fail(ErrorKind::InvalidArgument, "shifted theta is applied to phi = 0 terms only");
        // lambda t d/dt: t^k' gives k', |t|^{2b} gives b, L^l/l! gives -L^{l-1}/(l-1)!
        ExpansionTerm same = t;
        same.coeff = t.coeff * (star(t.beta) - star(beta0) + lam * ParamScalar(t.kprime));
        if (!same.coeff.is_zero()) out.push_back(same);
        if (t.ell > 0) {
            ExpansionTerm down = t;
            down.ell -= 1;
            down.coeff = -(t.coeff * lam);
            out.push_back(down);
        }
    }
    return merge_terms(out);
}

std::vector<ExpansionTerm> model_orthonormal_block(const ComplexExponent& beta, int ell)
{
    if (ell < 0) fail(ErrorKind::InvalidArgument, "ell must be nonnegative");
    std::vector<ExpansionTerm> out;
    ParamScalar c(1);
    ParamScalar ml = -ParamScalar::lambda();
    for (int k = 0; k <= ell; ++k) {
        ExpansionTerm t;
        t.beta = beta;
        t.ell = ell - k;
        t.coeff = c;
        t.metadata = "(i*z)^-" + std::to_string(ell);
        out.push_back(t);
        c *= ml;
    }
    return out;
}

std::vector<WeightFactor> weight_matrix(const ComplexExponent& beta, const std::vector<int>& h)
{
    ParamScalar e = ParamScalar(Cyclotomic(beta.re)) + ParamScalar(Cyclotomic::gaussian(0, beta.im)) * ParamScalar::lambda();
    std::vector<WeightFactor> out;
    for (int x : h) {
        mpq_class p(x, 2);
        p.canonicalize();
        out.push_back({e, p});
    }
    return out;
}

}  // namespace wildcycle

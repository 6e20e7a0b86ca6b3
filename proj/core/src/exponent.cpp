#include "wildcycle/exponent.hpp"

#include "wildcycle/errors.hpp"

namespace wildcycle {

long ComplexExponent::integer_shift() const
{
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), re.get_num_mpz_t(), re.get_den_mpz_t());
    return c.get_si();
}

ComplexExponent ComplexExponent::normalized() const
{
    return {re - integer_shift(), im};
}

std::string ComplexExponent::to_string() const
{
    return Cyclotomic::gaussian(re, im).to_string();
}

ParamScalar star(const ComplexExponent& beta)
{
    Cyclotomic half_im = Cyclotomic::gaussian(0, beta.im / 2);
    return ParamScalar(CycPoly(std::vector<Cyclotomic>{half_im, Cyclotomic(beta.re), half_im}));
}

Cyclotomic star_at(const ComplexExponent& beta, const Cyclotomic& lambda0)
{
    return star(beta).eval(lambda0);
}

mpq_class ell(const ComplexExponent& beta, const Cyclotomic& lambda0)
{
    mpq_class a, b;
    if (!lambda0.gaussian_parts(a, b)) fail(ErrorKind::InvalidArgument, "lambda0 must be a Gaussian rational");
    return beta.re - beta.im * b;
}

namespace {

[[noreturn]] void not_star(const std::string& what)
{
    fail(ErrorKind::NotStarShaped, "eigenvalue " + what + " is not of the form beta*lambda");
}

}  // namespace

ComplexExponent exponent_from_eigenvalue(const ParamScalar& e)
{
    if (!e.is_polynomial() || e.num().degree() > 2) not_star(e.to_string());
    Cyclotomic e0 = e.num().coeff(0), e1 = e.num().coeff(1), e2 = e.num().coeff(2);
    mpq_class r0, i0, r1, i1;
    if (e0 != e2 || !e0.gaussian_parts(r0, i0) || r0 != 0) not_star(e.to_string());
    if (!e1.gaussian_parts(r1, i1) || i1 != 0) not_star(e.to_string());
    return {r1, 2 * i0};
}

ComplexExponent exponent_from_value(const Cyclotomic& e, const Cyclotomic& lambda0)
{
    mpq_class a, b, x, y;
    if (!lambda0.gaussian_parts(a, b)) fail(ErrorKind::InvalidArgument, "lambda0 must be a Gaussian rational");
    if (a == 0) fail(ErrorKind::InvalidArgument, "exponent recovery is ambiguous at purely imaginary lambda0");
    if (!e.gaussian_parts(x, y)) not_star(e.to_string());
    // x = a re - a b im ; y = b re + (a^2 - b^2 + 1)/2 im
    mpq_class m11 = a, m12 = -a * b, m21 = b, m22 = (a * a - b * b + 1) / 2;
    mpq_class det = m11 * m22 - m12 * m21;
    return {(x * m22 - m12 * y) / det, (m11 * y - m21 * x) / det};
}

}  // namespace wildcycle

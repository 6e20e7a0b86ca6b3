#include "numeric.hpp"

#include "wildcycle/cycpoly.hpp"
#include "wildcycle/errors.hpp"
#include "wildcycle/exp_factor.hpp"
#include "wildcycle/exponent.hpp"
#include "wildcycle/roots.hpp"
#include "wildcycle/series.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wildcycle;
using wctest::close;
using wctest::to_complex;

namespace {

Cyclotomic random_element(std::mt19937& rng, int n)
{
    std::uniform_int_distribution<int> d(-5, 5);
    std::vector<mpq_class> c;
    for (int k = 0; k < euler_phi(n); ++k) c.push_back(mpq_class(d(rng), 1 + (d(rng) + 5) % 3));
    for (auto& x : c) x.canonicalize();
    return Cyclotomic(n, c);
}

}  // namespace

TEST(Cyclotomic, PolynomialsAndUnits)
{
    std::vector<mpz_class> p12 = {1, 0, -1, 0, 1};
    EXPECT_EQ(cyclotomic_polynomial(12), p12);
    EXPECT_EQ(euler_phi(12), 4);
    Cyclotomic z3 = Cyclotomic::zeta(3);
    EXPECT_TRUE((z3 * z3 * z3).is_one());
    EXPECT_TRUE((Cyclotomic(1) + z3 + z3 * z3).is_zero());
    Cyclotomic i = Cyclotomic::imag_unit();
    EXPECT_EQ(i * i, Cyclotomic(-1));
    // zeta_12^3 = i after minimizing the field
    EXPECT_EQ(Cyclotomic::zeta(12, 3).minimized(), i);
}

TEST(Cyclotomic, ArithmeticMatchesComplexNumbers)
{
    std::mt19937 rng(11);
    for (int n : {1, 3, 4, 5, 8, 12}) {
        for (int rep = 0; rep < 20; ++rep) {
            Cyclotomic a = random_element(rng, n), b = random_element(rng, n);
            auto ca = to_complex(a), cb = to_complex(b);
            EXPECT_TRUE(close(to_complex(a + b), ca + cb));
            EXPECT_TRUE(close(to_complex(a * b), ca * cb));
            EXPECT_TRUE(close(to_complex(a.conj()), std::conj(ca)));
            if (!b.is_zero()) EXPECT_TRUE(close(to_complex(a / b), ca / cb, 1e-7));
        }
    }
}

TEST(Cyclotomic, GaloisActionAndGaussianParts)
{
    std::mt19937 rng(5);
    Cyclotomic a = random_element(rng, 12);
    // sigma_5 sends zeta_12 to zeta_12^5
    wctest::cplx expect = 0;
    for (size_t k = 0; k < a.coeffs().size(); ++k)
        expect += a.coeffs()[k].get_d() * std::polar(1.0, 2 * std::numbers::pi * 5.0 * k / 12);
    EXPECT_TRUE(close(to_complex(a.galois(5)), expect));
    mpq_class re, im;
    ASSERT_TRUE(Cyclotomic::gaussian(mpq_class(1, 3), mpq_class(-2)).gaussian_parts(re, im));
    EXPECT_EQ(re, mpq_class(1, 3));
    EXPECT_EQ(im, -2);
    EXPECT_FALSE(Cyclotomic::zeta(3).gaussian_parts(re, im));
}

TEST(ParamScalar, CancelsAndEvaluates)
{
    ParamScalar l = ParamScalar::lambda();
    ParamScalar r = (l * l - ParamScalar(1)) / (l - ParamScalar(1));
    EXPECT_EQ(r, l + ParamScalar(1));
    EXPECT_TRUE(r.is_polynomial());
    ParamScalar f = (l + ParamScalar(Cyclotomic::imag_unit())) / (l * l + ParamScalar(2));
    for (wctest::cplx x : {wctest::cplx(0.5, 0), wctest::cplx(-1, 2), wctest::cplx(3, -1)}) {
        wctest::cplx expect = (x + wctest::cplx(0, 1)) / (x * x + 2.0);
        EXPECT_TRUE(close(to_complex(f, x), expect));
    }
    EXPECT_EQ(f.eval(Cyclotomic(1)), (Cyclotomic(1) + Cyclotomic::imag_unit()) / Cyclotomic(3));
    ParamScalar g = ParamScalar(1) / (l - ParamScalar(2));
    EXPECT_FALSE(g.defined_at(Cyclotomic(2)));
    try {
        g.eval(Cyclotomic(2));
        FAIL() << "expected DenominatorVanishes";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DenominatorVanishes);
    }
}

TEST(Series, ProductMatchesConvolution)
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-4, 4);
    std::vector<ParamScalar> a(6), b(5);
    for (auto& x : a) x = ParamScalar(d(rng)) + ParamScalar(d(rng)) * ParamScalar::lambda();
    for (auto& x : b) x = ParamScalar(d(rng));
    Series sa = Series::from_coeffs(1, -2, a, kExact), sb = Series::from_coeffs(1, 1, b, kExact);
    Series p = sa * sb;
    for (int n = -1; n <= 8; ++n) {
        ParamScalar expect(0);
        for (int i = 0; i < 6; ++i) {
            int j = n - (i - 2) - 1;
            if (j >= 0 && j < 5) expect += a[i] * b[j];
        }
        EXPECT_EQ(p.coeff(n), expect) << "n=" << n;
    }
}

TEST(Series, PrecisionPropagatesThroughProducts)
{
    Series a = Series::from_coeffs(1, -1, {ParamScalar(1)}, 3);  // t^-1 + O(t^3)
    Series b = Series::from_coeffs(1, 2, {ParamScalar(1)}, 5);   // t^2 + O(t^5)
    Series p = a * b;
    EXPECT_EQ(p.precision(), 4);
    EXPECT_EQ(p.valuation(), 1);
    Series u = Series::from_coeffs(1, 0, {ParamScalar(1), ParamScalar(-1)}, kExact);  // 1 - t
    Series inv = u.inverse(10);
    EXPECT_EQ(inv.precision(), 10);
    for (int k = 0; k < 10; ++k) EXPECT_EQ(inv.coeff(k), ParamScalar(1));
    EXPECT_TRUE(agree_below(u * inv, Series::constant(ParamScalar(1)), 10));
}

TEST(Series, ThetaAndRamification)
{
    Series s = Series::from_coeffs(1, -2, {ParamScalar(3), ParamScalar(0), ParamScalar(5)}, kExact);
    Series th = s.theta();
    EXPECT_EQ(th.coeff(-2), ParamScalar(-6));
    EXPECT_EQ(th.coeff(0), ParamScalar(0));
    Series r = s.ramified(3);
    EXPECT_EQ(r.q(), 3);
    EXPECT_EQ(r.coeff(-6), ParamScalar(3));
    EXPECT_EQ(r.coeff(0), ParamScalar(5));
    // theta in t_3 is 3 times theta in t
    EXPECT_EQ(r.theta(), th.ramified(3).scaled(ParamScalar(3)));
}

TEST(Exponent, StarProductAndInverses)
{
    ComplexExponent b(mpq_class(-1, 3), mpq_class(2, 5));
    ParamScalar s = star(b);
    for (wctest::cplx x : {wctest::cplx(1, 0), wctest::cplx(0.5, -0.25), wctest::cplx(-2, 1)}) {
        wctest::cplx expect = x * (-1.0 / 3) + wctest::cplx(0, 0.4) * (x * x + 1.0) / 2.0;
        EXPECT_TRUE(close(to_complex(s, x), expect));
    }
    EXPECT_EQ(exponent_from_eigenvalue(s), b);
    Cyclotomic l0 = Cyclotomic::gaussian(2, 1);
    EXPECT_EQ(star_at(b, l0), s.eval(l0));
    EXPECT_EQ(exponent_from_value(star_at(b, l0), l0), b);
    EXPECT_EQ(ell(b, l0), mpq_class(-1, 3) - mpq_class(2, 5));
    // star(1) is lambda: shears move exponents by one
    EXPECT_EQ(star(ComplexExponent(1)), ParamScalar::lambda());
    ComplexExponent c(mpq_class(-3, 2), 1);
    EXPECT_EQ(c.normalized(), ComplexExponent(mpq_class(-1, 2), 1));
    EXPECT_EQ(c.integer_shift(), -1);
    EXPECT_EQ(ComplexExponent(0).normalized(), ComplexExponent(0));
}

TEST(Roots, SplittingEnlargesTheField)
{
    // x^2 + 1 needs Q(i), x^2 + x + 1 needs Q(zeta_3)
    CycPoly p(std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(0), Cyclotomic(1)});
    RootSet rs = split_completely(p, 1);
    EXPECT_EQ(rs.count(), 2);
    EXPECT_EQ(rs.order % 4, 0);
    for (const auto& [r, m] : rs.roots) EXPECT_TRUE(p.eval(r).is_zero());
    CycPoly c(std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(1), Cyclotomic(1)});
    RootSet rc = split_completely(c, 1);
    EXPECT_EQ(rc.count(), 2);
    for (const auto& [r, m] : rc.roots) EXPECT_TRUE(c.eval(r).is_zero());
    // x^2 - 2 has no cyclotomic roots of small order handled here
    CycPoly sq(std::vector<Cyclotomic>{Cyclotomic(-2), Cyclotomic(0), Cyclotomic(1)});
    EXPECT_EQ(roots_in_field(sq, 1).count(), 0);
}

TEST(ExpFactor, RamificationAndRotation)
{
    ExpFactor phi(2, {{-3, Cyclotomic(mpq_class(2, 3))}});
    EXPECT_EQ(phi.to_string("t"), "2/3*t_2^-3");
    EXPECT_EQ(phi.pole_order(), 3);
    ExpFactor up = phi.at_ramification(4);
    EXPECT_EQ(up.q(), 4);
    EXPECT_EQ(up.coeff(-6), Cyclotomic(mpq_class(2, 3)));
    EXPECT_EQ(up.reduced(), phi);
    // t_2 -> -t_2 flips the odd coefficient
    EXPECT_EQ(phi.rotated(1), -phi);
    EXPECT_TRUE(is_t_irreducible(phi));
    Series th = phi.theta_series();
    EXPECT_EQ(th.coeff(-3), ParamScalar(Cyclotomic(-2)));
}

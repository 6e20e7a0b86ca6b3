#pragma once

#include "wildcycle/param_scalar.hpp"

#include <string>

namespace wildcycle {

struct ComplexExponent {
    mpq_class re;
    mpq_class im;

    ComplexExponent() = default;
    ComplexExponent(const mpq_class& r, const mpq_class& i = 0) : re(r), im(i) {}

    ComplexExponent normalized() const;  // re in (-1, 0]
    // integer k with normalized() == *this - k
    long integer_shift() const;
    ComplexExponent operator+(const ComplexExponent& o) const { return {re + o.re, im + o.im}; }
    ComplexExponent operator-(const ComplexExponent& o) const { return {re - o.re, im - o.im}; }
    ComplexExponent operator-() const { return {-re, -im}; }
    ComplexExponent scaled(const mpq_class& s) const { return {re * s, im * s}; }
    bool operator==(const ComplexExponent& o) const { return re == o.re && im == o.im; }
    bool operator!=(const ComplexExponent& o) const { return !(*this == o); }
    bool operator<(const ComplexExponent& o) const { return re != o.re ? re < o.re : im < o.im; }
    Cyclotomic value() const { return Cyclotomic::gaussian(re, im); }
    std::string to_string() const;
};

// beta*lambda = lambda*re + i*im*(lambda^2 + 1)/2
ParamScalar star(const ComplexExponent& beta);
Cyclotomic star_at(const ComplexExponent& beta, const Cyclotomic& lambda0);
// re - im * Im(lambda0); lambda0 must be Gaussian rational
mpq_class ell(const ComplexExponent& beta, const Cyclotomic& lambda0);
// inverse of star on the generic lambda line
ComplexExponent exponent_from_eigenvalue(const ParamScalar& e);
// inverse of star at a fixed lambda0 = a + bi with a != 0
ComplexExponent exponent_from_value(const Cyclotomic& e, const Cyclotomic& lambda0);

}  // namespace wildcycle

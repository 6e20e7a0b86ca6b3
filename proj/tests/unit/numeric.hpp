#pragma once

// Floating point images of exact values, used as independent oracles.

#include "wildcycle/cyclotomic.hpp"
#include "wildcycle/param_scalar.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace wctest {

using cplx = std::complex<double>;

inline cplx to_complex(const wildcycle::Cyclotomic& c)
{
    cplx s = 0;
    int n = c.order();
    for (size_t k = 0; k < c.coeffs().size(); ++k)
        s += c.coeffs()[k].get_d() * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / n);
    return s;
}

inline cplx poly_at(const wildcycle::CycPoly& p, cplx x)
{
    cplx s = 0;
    for (int k = p.degree(); k >= 0; --k) s = s * x + to_complex(p.coeff(k));
    return s;
}

inline cplx to_complex(const wildcycle::ParamScalar& a, cplx lambda)
{
    return poly_at(a.num(), lambda) / poly_at(a.den(), lambda);
}

inline bool close(cplx a, cplx b, double tol = 1e-9)
{
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace wctest

#pragma once

#include "wildcycle/lambda_connection.hpp"

#include <vector>

namespace wildcycle {

struct NewtonSlope {
    mpq_class slope;  // pole order of the roots, in units of the module coordinate t_q
    int length = 0;
};

struct NewtonPolygon {
    std::vector<NewtonSlope> slopes;  // increasing, slope 0 first when present
    int module_q = 1;

    int rank() const;
    int regular_length() const;  // length of the slope-0 part
    mpq_class max_slope() const;
    // ramification needed relative to the module coordinate
    int relative_q() const;
    int absolute_q() const { return module_q * relative_q(); }
    bool all_zero() const { return max_slope() == 0; }
};

// polygon of a monic polynomial with series coefficients (constant term first)
NewtonPolygon newton_from_coefficients(const std::vector<Series>& coeffs, int module_q);

struct CyclicFrame {
    LaurentMatrix C;          // columns e, De, ..., D^(n-1)e
    LaurentMatrix companion;  // matrix of D in that frame
    std::vector<Series> tail; // D^n e = sum tail_i D^i e
};

// cyclic vector for D v = A v + lam * t v'
CyclicFrame cyclic_frame(const LaurentMatrix& a, const ParamScalar& lam, int cap);
// monic characteristic polynomial of the operator read off the companion frame
std::vector<Series> companion_polynomial(const CyclicFrame& f);
std::vector<Series> series_char_poly(const LaurentMatrix& a);

// Newton polygon of M at lambda0 (cyclic frame for lambda0 != 0, Higgs characteristic polynomial at 0)
NewtonPolygon newton_polygon(const LambdaConnection& m, const Cyclotomic& lambda0, int cap = 64);
// polygon of the family (generic lambda) or of an already restricted module
NewtonPolygon newton_polygon_module(const LambdaConnection& m, int cap = 64);

}  // namespace wildcycle

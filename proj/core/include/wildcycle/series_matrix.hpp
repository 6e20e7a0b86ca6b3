#pragma once

#include "wildcycle/linalg.hpp"
#include "wildcycle/series.hpp"

#include <string>

namespace wildcycle {

using ScalarMat = Mat<ParamScalar>;
using CycMat = Mat<Cyclotomic>;
using LaurentMatrix = Mat<Series>;

Series scale_inv(const Series& x, long k);

LaurentMatrix smat_identity(int n, int q = 1);
LaurentMatrix smat_from_constant(const ScalarMat& m, int q = 1);
LaurentMatrix smat_zero(int rows, int cols, int q = 1);
// minimum valuation (kExact if every entry is an exact zero)
int smat_valuation(const LaurentMatrix& m);
int smat_precision(const LaurentMatrix& m);
int smat_q(const LaurentMatrix& m);
ScalarMat smat_coeff(const LaurentMatrix& m, int n);
LaurentMatrix smat_theta(const LaurentMatrix& m);
LaurentMatrix smat_ramified(const LaurentMatrix& m, int r);
LaurentMatrix smat_shifted(const LaurentMatrix& m, int k);
LaurentMatrix smat_with_precision(const LaurentMatrix& m, int p);
LaurentMatrix smat_eval_lambda(const LaurentMatrix& m, const Cyclotomic& l0);
LaurentMatrix smat_with_q(const LaurentMatrix& m, int q);
int smat_common_order(const LaurentMatrix& m);
// inverse over the Laurent series field, cap bounds precision for exact inputs
LaurentMatrix smat_inverse(const LaurentMatrix& m, int cap);
// G^-1 (A G + lam * theta(G)), the frame change of a lambda-connection matrix
LaurentMatrix smat_gauge(const LaurentMatrix& a, const LaurentMatrix& g, const ParamScalar& lam);
// diag(t^k_1, ..., t^k_n)
LaurentMatrix smat_diag_powers(const std::vector<int>& k, int q);
ScalarMat scalar_identity(int n);

std::string smat_to_string(const LaurentMatrix& m, const std::string& var = "t", const std::string& lvar = "z");

}  // namespace wildcycle

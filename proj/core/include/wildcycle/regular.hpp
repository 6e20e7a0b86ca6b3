#pragma once

#include "wildcycle/exp_factor.hpp"
#include "wildcycle/exponent.hpp"
#include "wildcycle/lambda_connection.hpp"
#include "wildcycle/monodromy.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wildcycle {

struct ExponentData {
    ComplexExponent beta;
    int multiplicity = 0;
};

// Constant form of a regular lambda-connection: t d/dt acts by R, block
// diagonal by exponent, each block star(beta) Id + Y_beta with Y_beta strictly lower.
struct RegularModel {
    int q = 1;
    std::optional<Cyclotomic> lambda0;
    ScalarMat R;
    std::vector<ExponentData> exponents;
    std::vector<ScalarMat> nilpotents;
    std::vector<int> offsets;
    int rank() const { return R.rows(); }
    ParamScalar star_value(const ComplexExponent& b) const;
};

struct ReductionResult {
    RegularModel model;
    LaurentMatrix gauge;  // input frame -> model frame
    int gauge_order = 0;  // gauge known modulo t^gauge_order
};

struct NearbyCycleDatum {
    ExpFactor phi{1};
    ComplexExponent beta;
    int dim = 0;
    ScalarMat N;
    std::map<int, int> weight_dims;
    std::map<int, int> primitive_dims;
};

struct BernsteinFactor {
    ComplexExponent beta;  // the factor is (s - beta*lambda)^power
    int power = 0;
    ParamScalar root;
};

struct BernsteinProduct {
    std::vector<BernsteinFactor> factors;
    std::vector<ParamScalar> coefficients;  // expanded polynomial in s, constant term first
    std::string to_string() const;
};

struct RegularityVerdict {
    std::optional<bool> newton_slopes_zero;  // at lambda0 = 1 (or the fixed nonzero lambda0)
    std::optional<bool> v0_full;             // V0-lattice fiber dimension equals rank at lambda0 = 0
    std::optional<bool> decomposition_trivial;
    int v0_dim = -1;
    bool agree = true;
    std::vector<std::string> findings;
    bool regular() const;
};

// exponents from the residue; lambda0 empty means the generic family
std::vector<ExponentData> residue_exponents(const ScalarMat& r0, const std::optional<Cyclotomic>& lambda0, int base_order = 1);
ReductionResult reduce_to_constant(const LambdaConnection& m, int exact_cap = 12);
NearbyCycleDatum psi_beta(const RegularModel& rm, const ComplexExponent& beta);
std::vector<ComplexExponent> normalized_exponents(const RegularModel& rm);
BernsteinProduct bernstein_product(const RegularModel& rm, int shift);
int v0_lattice_fiber_dim(const LambdaConnection& higgs);
RegularityVerdict regularity_test(const LambdaConnection& m);

}  // namespace wildcycle

#pragma once

#include "wildcycle/lambda_connection.hpp"
#include "wildcycle/newton.hpp"

#include <string>
#include <vector>

namespace wildcycle {

struct DecompOptions {
    int exact_cap = 8;    // working precision (in t) used when the input is exact
    int max_cap = 64;     // exact input is retried at doubled precision up to this
    int max_steps = 400;  // bound on recursion steps per block
};

struct Summand {
    ExpFactor phi;             // at ramification q_used
    LambdaConnection regular;  // valuation >= 0 in its frame
    int rank() const { return regular.rank(); }
};

struct FormalDecomposition {
    std::vector<Summand> summands;
    LaurentMatrix gauge;  // columns: decomposed frame in terms of the pulled-back input frame
    int q_used = 1;       // absolute ramification of the working coordinate
    int input_q = 1;
    int field_order = 1;  // cyclotomic field the result lives in
    int guaranteed_order = kExact;
    std::optional<Cyclotomic> lambda0;

    // block diagonal target matrix sum of (t phi' Id + A_j)
    LaurentMatrix target() const;
    int rank() const;
};

struct SplitResult {
    LaurentMatrix b1, b2;
    LaurentMatrix gauge;  // [[I, X], [Y, I]]
};

// block splitting of a matrix with pole order k whose leading coefficient is block diagonal
// with disjoint spectra on the n1 x n1 and complementary blocks
SplitResult sylvester_split(const LaurentMatrix& a, int n1, const ParamScalar& lam);

// constant gauge separating the generalized eigenspace of `c` (first n1 columns) from the rest
ScalarMat eigen_separation(const ScalarMat& a0, const ParamScalar& c, int& n1);

// leading_split on a module: spectrum of the leading matrix split as {group} vs rest
struct LeadingSplit {
    LambdaConnection first, second;
    LaurentMatrix gauge;
};
LeadingSplit leading_split(const LambdaConnection& m, const std::vector<Cyclotomic>& group);

FormalDecomposition formal_decompose(const LambdaConnection& m, const DecompOptions& opt = {});

struct VerifyReport {
    bool pass = false;
    int residual_valuation = kExact;  // smallest order of a nonzero residual coefficient
    int certified_order = kExact;     // order up to which residuals were checked
    int claimed_order = kExact;
    std::vector<std::string> findings;
};

// recompute gauge^-1 A gauge + lam gauge^-1 theta(gauge) and compare with the target;
// order_limit < kExact checks only coefficients below that order
VerifyReport verify_decomposition(const LambdaConnection& m, const FormalDecomposition& d, int order_limit = kExact);

// a priori input truncation sufficient for a certified decomposition to order t_out
int required_truncation(int rank, int q, int max_pole, int t_out);

}  // namespace wildcycle

#pragma once

#include "wildcycle/exp_factor.hpp"
#include "wildcycle/series_matrix.hpp"

#include <optional>
#include <vector>

namespace wildcycle {

// Free module over Laurent series in t_q with the matrix A of t_q d_{t_q} scaled by lambda,
// i.e. the action of t_q dh_{t_q} with dh = lambda d. lambda0 set means lambda is fixed.
struct LambdaConnection {
    int q = 1;
    LaurentMatrix A;
    std::optional<Cyclotomic> lambda0;

    LambdaConnection() = default;
    LambdaConnection(int q_, LaurentMatrix a, std::optional<Cyclotomic> l0 = std::nullopt)
        : q(q_), A(smat_with_q(std::move(a), q_)), lambda0(std::move(l0)) {}

    int rank() const { return A.rows(); }
    int precision() const { return smat_precision(A); }
    bool is_higgs() const { return lambda0 && lambda0->is_zero(); }
    ParamScalar lambda_scalar() const { return lambda0 ? ParamScalar(*lambda0) : ParamScalar::lambda(); }
    int pole_order() const;  // max(0, -valuation(A))
    int common_order() const { return smat_common_order(A); }
};

LambdaConnection twist_exponential(const LambdaConnection& m, const ExpFactor& phi, int sign);
LambdaConnection ramify_pullback(const LambdaConnection& m, int r);
// pushforward along t_q -> t_{q/e}
LambdaConnection pushforward(const LambdaConnection& m, int e);
LambdaConnection restrict_lambda(const LambdaConnection& m, const Cyclotomic& l0);
LambdaConnection gauge_transform(const LambdaConnection& m, const LaurentMatrix& g);
LambdaConnection direct_sum(const LambdaConnection& a, const LambdaConnection& b);
LambdaConnection tensor(const LambdaConnection& a, const LambdaConnection& b);
// gauge by diag(t^power on `indices`, 1 elsewhere)
LambdaConnection shear(const LambdaConnection& m, const std::vector<int>& indices, int power);
LambdaConnection with_precision(const LambdaConnection& m, int p);

// rank-one E^{phi/lambda}: matrix t phi'
LambdaConnection exponential_module(const ExpFactor& phi);
// constant regular model R (entries in lambda)
LambdaConnection constant_module(const ScalarMat& r, int q = 1);

}  // namespace wildcycle

#pragma once

#include "wildcycle/exp_factor.hpp"
#include "wildcycle/exponent.hpp"

#include <map>
#include <string>
#include <vector>

namespace wildcycle {

// coeff * t^k' tbar^k'' * e^{-lambda conj(phi) + phi/lambda} * |t|^{2 beta*lambda/lambda} * L^ell / ell!
// with L = |log |t|^2|
struct ExpansionTerm {
    ExpFactor phi{1};
    ComplexExponent beta;
    int ell = 0;
    int kprime = 0;
    int ksecond = 0;
    ParamScalar coeff = ParamScalar(1);
    std::string metadata;

    bool same_shape(const ExpansionTerm& o) const;
    std::string to_string() const;
};

struct MellinPole {
    ComplexExponent alpha;  // pole at s = alpha*lambda / lambda
    int order = 0;
    std::map<int, ParamScalar> principal;  // coefficient of (s - alpha*lambda/lambda)^-(j+1)
    ParamScalar location() const;
    Cyclotomic location_at(const Cyclotomic& lambda0) const;
    std::string to_string() const;
};

struct WeightFactor {
    ParamScalar modulus_exponent;  // exponent of |t|: beta' + i lambda beta''
    mpq_class log_power;           // exponent of L
    std::string to_string() const;
};

std::vector<ExpansionTerm> merge_terms(std::vector<ExpansionTerm> terms);
std::vector<MellinPole> mellin_poles(const ExpansionTerm& term);
std::vector<MellinPole> mellin_poles(const std::vector<ExpansionTerm>& terms);
// multiply by t^m tbar^mbar L^n
ExpansionTerm expansion_product(const ExpansionTerm& a, int m, int mbar, int n);
// rewrite t^k' tbar^k'' with k', k'' > 0 through |t|^2, shifting beta by one
ExpansionTerm absorb_modulus(const ExpansionTerm& a);
// (t d_t - beta0*lambda) with d_t = lambda d/dt applied termwise
std::vector<ExpansionTerm> apply_shifted_theta(const std::vector<ExpansionTerm>& terms, const ComplexExponent& beta0);
std::vector<ExpansionTerm> model_orthonormal_block(const ComplexExponent& beta, int ell);
std::vector<WeightFactor> weight_matrix(const ComplexExponent& beta, const std::vector<int>& h);

}  // namespace wildcycle

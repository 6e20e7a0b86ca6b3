#pragma once

#include "wildcycle/series.hpp"

#include <map>
#include <string>

namespace wildcycle {

// phi in t_q^-1 C[t_q^-1]; q is the ramification index relative to the reference coordinate t
class ExpFactor {
public:
    ExpFactor() = default;
    explicit ExpFactor(int q) : q_(q) {}
    ExpFactor(int q, std::map<int, Cyclotomic> coeffs);

    int q() const { return q_; }
    const std::map<int, Cyclotomic>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int pole_order() const { return c_.empty() ? 0 : -c_.begin()->first; }  // in t_q units
    Cyclotomic coeff(int k) const;

    ExpFactor operator+(const ExpFactor& o) const;
    ExpFactor operator-() const;
    ExpFactor operator-(const ExpFactor& o) const { return *this + (-o); }
    // representation in t_Q, q | Q
    ExpFactor at_ramification(int Q) const;
    ExpFactor reduced() const;  // minimal q
    // phi(zeta t_q) for zeta = zeta_q^j
    ExpFactor rotated(int j) const;
    // t_q d/dt_q phi as an exact series
    Series theta_series() const;
    bool operator==(const ExpFactor& o) const;
    bool operator!=(const ExpFactor& o) const { return !(*this == o); }
    int common_order() const;

    std::string to_string(const std::string& var = "t") const;

private:
    int q_ = 1;
    std::map<int, Cyclotomic> c_;
};

// canonical order: pole order (as a rational in t), then coefficients lexicographically
bool exp_factor_less(const ExpFactor& a, const ExpFactor& b);
bool is_t_irreducible(const ExpFactor& phi);

}  // namespace wildcycle

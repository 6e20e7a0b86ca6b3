#pragma once

#include "wildcycle/param_scalar.hpp"

#include <string>
#include <vector>

namespace wildcycle {

// precision value meaning "exact": every coefficient is known
inline constexpr int kExact = 1 << 28;

// Truncated Laurent series in t_q with ParamScalar coefficients.
// Coefficients of t_q^n are explicit for val <= n < val + size, zero for
// val + size <= n < prec and unknown from prec on.
class Series {
public:
    Series() = default;
    explicit Series(int q) : q_(q) {}
    static Series constant(const ParamScalar& c, int q = 1);
    static Series monomial(const ParamScalar& c, int k, int q = 1);
    static Series from_coeffs(int q, int val, std::vector<ParamScalar> coeffs, int prec);
    // zero known up to prec
    static Series zero_to(int prec, int q = 1);

    int q() const { return q_; }
    int valuation() const { return val_; }
    int precision() const { return prec_; }
    bool is_exact() const { return prec_ >= kExact; }
    bool known_zero() const { return c_.empty(); }
    bool is_exact_zero() const { return c_.empty() && is_exact(); }
    // no t-dependence at all: exact and supported in degree 0
    bool is_q_free() const { return is_exact() && (c_.empty() || (val_ == 0 && c_.size() == 1)); }
    int end() const { return val_ + static_cast<int>(c_.size()); }
    const std::vector<ParamScalar>& raw() const { return c_; }
    ParamScalar coeff(int n) const;
    const ParamScalar& leading() const { return c_.front(); }

    Series with_precision(int p) const;
    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    Series& operator*=(const Series& o) { return *this = *this * o; }
    Series scaled(const ParamScalar& s) const;
    friend bool operator==(const Series& a, const Series& b);
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    // multiplicative inverse; cap bounds the precision when the input is exact
    Series inverse(int cap = kExact) const;
    // t_q d/dt_q
    Series theta() const;
    Series shifted(int k) const;
    // substitute t_q = t_{rq}^r
    Series ramified(int r) const;
    Series with_q(int q) const;  // for q-free series
    Series eval_lambda(const Cyclotomic& l0) const;
    int common_order() const;

    std::string to_string(const std::string& var = "t", const std::string& lvar = "z") const;

private:
    void normalize();
    int q_ = 1;
    int val_ = kExact;
    int prec_ = kExact;
    std::vector<ParamScalar> c_;
};

int sat_add(int a, int b);
// equality of the coefficients below p (both must be known there)
bool agree_below(const Series& a, const Series& b, int p);

}  // namespace wildcycle

#pragma once

#include "wildcycle/cycpoly.hpp"

#include <string>

namespace wildcycle {

// Rational function num/den in the parameter lambda over Q(zeta); den monic, reduced.
class ParamScalar {
public:
    ParamScalar() = default;
    ParamScalar(long v) : num_(Cyclotomic(v)), den_(Cyclotomic(1)) {}
    ParamScalar(const Cyclotomic& c) : num_(c), den_(Cyclotomic(1)) {}
    ParamScalar(const CycPoly& p) : num_(p), den_(Cyclotomic(1)) {}
    ParamScalar(const CycPoly& num, const CycPoly& den);

    static ParamScalar lambda() { return ParamScalar(CycPoly::x()); }

    const CycPoly& num() const { return num_; }
    const CycPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return den_.is_one() && num_.is_constant(); }
    Cyclotomic constant_value() const;  // requires is_constant()

    ParamScalar operator-() const;
    ParamScalar& operator+=(const ParamScalar& o);
    ParamScalar& operator-=(const ParamScalar& o);
    ParamScalar& operator*=(const ParamScalar& o);
    ParamScalar& operator/=(const ParamScalar& o);
    friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
    friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
    friend ParamScalar operator*(ParamScalar a, const ParamScalar& b) { return a *= b; }
    friend ParamScalar operator/(ParamScalar a, const ParamScalar& b) { return a /= b; }
    friend bool operator==(const ParamScalar& a, const ParamScalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const ParamScalar& a, const ParamScalar& b) { return !(a == b); }

    ParamScalar inverse() const;
    // throws DenominatorVanishes when den(l0) = 0
    Cyclotomic eval(const Cyclotomic& l0) const;
    bool defined_at(const Cyclotomic& l0) const { return !den_.eval(l0).is_zero(); }
    int common_order() const { return lcm_int(num_.common_order(), den_.common_order()); }

    // expression in the variable `var`, parseable by the document grammar
    std::string to_string(const std::string& var = "z") const;

private:
    void normalize();
    CycPoly num_;
    CycPoly den_ = CycPoly(Cyclotomic(1));
};

}  // namespace wildcycle

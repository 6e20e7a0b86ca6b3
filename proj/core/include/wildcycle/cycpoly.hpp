#pragma once

#include "wildcycle/cyclotomic.hpp"

#include <string>
#include <vector>

namespace wildcycle {

// Univariate polynomial with cyclotomic coefficients, constant term first.
class CycPoly {
public:
    CycPoly() = default;
    CycPoly(const Cyclotomic& c) { if (!c.is_zero()) c_.push_back(c); }
    explicit CycPoly(std::vector<Cyclotomic> coeffs) : c_(std::move(coeffs)) { trim(); }
    static CycPoly x() { return CycPoly(std::vector<Cyclotomic>{Cyclotomic(0), Cyclotomic(1)}); }
    static CycPoly monomial(const Cyclotomic& c, int deg);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    const std::vector<Cyclotomic>& coeffs() const { return c_; }
    Cyclotomic coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Cyclotomic(); }
    const Cyclotomic& lead() const { return c_.back(); }

    CycPoly operator-() const;
    CycPoly& operator+=(const CycPoly& o);
    CycPoly& operator-=(const CycPoly& o);
    friend CycPoly operator+(CycPoly a, const CycPoly& b) { return a += b; }
    friend CycPoly operator-(CycPoly a, const CycPoly& b) { return a -= b; }
    friend CycPoly operator*(const CycPoly& a, const CycPoly& b);
    friend bool operator==(const CycPoly& a, const CycPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const CycPoly& a, const CycPoly& b) { return !(a == b); }

    CycPoly scaled(const Cyclotomic& s) const;
    CycPoly monic() const;
    CycPoly derivative() const;
    Cyclotomic eval(const Cyclotomic& x) const;
    // p(x) -> p(s*x)
    CycPoly rescaled(const Cyclotomic& s) const;
    int common_order() const;

    static void divmod(const CycPoly& a, const CycPoly& b, CycPoly& q, CycPoly& r);
    static CycPoly gcd(const CycPoly& a, const CycPoly& b);  // monic, gcd(0,0)=0

    std::string to_string(const std::string& var) const;

private:
    void trim();
    std::vector<Cyclotomic> c_;
};

}  // namespace wildcycle

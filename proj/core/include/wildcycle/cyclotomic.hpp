#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace wildcycle {

int euler_phi(int n);
int lcm_int(int a, int b);
// coefficients of the n-th cyclotomic polynomial, constant term first
const std::vector<mpz_class>& cyclotomic_polynomial(int n);

// Element of Q(zeta_N) stored in the power basis 1, zeta, ..., zeta^(phi(N)-1).
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(long v) : order_(1) { if (v != 0) c_.push_back(mpq_class(v)); }
    Cyclotomic(const mpq_class& v) : order_(1) { if (v != 0) c_.push_back(v); }
    Cyclotomic(int order, std::vector<mpq_class> coeffs);

    static Cyclotomic zeta(int n, long power = 1);
    static Cyclotomic imag_unit() { return zeta(4); }
    static Cyclotomic gaussian(const mpq_class& re, const mpq_class& im);

    int order() const { return order_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_rational() const { return c_.size() <= 1; }
    mpq_class rational_value() const;  // requires is_rational()

    // embed into Q(zeta_m), n | m
    Cyclotomic lifted(int m) const;
    // smallest subfield Q(zeta_d) containing this element
    Cyclotomic minimized() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;
    Cyclotomic conj() const;
    // apply zeta_N -> zeta_N^j, gcd(j, N) = 1
    Cyclotomic galois(int j) const;

    // real and imaginary parts when the element lies in Q(i); false otherwise
    bool gaussian_parts(mpq_class& re, mpq_class& im) const;

    // total order, used for canonical sorting only
    static int compare(const Cyclotomic& a, const Cyclotomic& b);

    std::string to_string() const;

private:
    void trim();
    int order_ = 1;
    std::vector<mpq_class> c_;
};

inline bool operator<(const Cyclotomic& a, const Cyclotomic& b) { return Cyclotomic::compare(a, b) < 0; }

std::string rational_to_string(const mpq_class& q);

}  // namespace wildcycle

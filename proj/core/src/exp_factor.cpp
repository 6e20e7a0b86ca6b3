#include "wildcycle/exp_factor.hpp"

#include "wildcycle/errors.hpp"

#include <numeric>

namespace wildcycle {

ExpFactor::ExpFactor(int q, std::map<int, Cyclotomic> coeffs) : q_(q)
{
    if (q < 1) fail(ErrorKind::InvalidArgument, "ramification index must be positive");
    for (auto& [k, c] : coeffs) {
        if (c.is_zero()) continue;
        if (k >= 0) fail(ErrorKind::InvalidArgument, "exponential factor with a non-negative power");
        c_[k] = c;
    }
}

Cyclotomic ExpFactor::coeff(int k) const
{
    auto it = c_.find(k);
    return it == c_.end() ? Cyclotomic() : it->second;
}

ExpFactor ExpFactor::at_ramification(int Q) const
{
    if (Q == q_) return *this;
    if (Q % q_ != 0) fail(ErrorKind::Internal, "exponential factor lifted to a non-multiple ramification");
    int s = Q / q_;
    std::map<int, Cyclotomic> m;
    for (const auto& [k, c] : c_) m[k * s] = c;
    return ExpFactor(Q, m);
}

ExpFactor ExpFactor::reduced() const
{
    int g = q_;
    for (const auto& [k, c] : c_) g = std::gcd(g, -k);
    if (g == 1) return *this;
    std::map<int, Cyclotomic> m;
    for (const auto& [k, c] : c_) m[k / g] = c;
    return ExpFactor(q_ / g, m);
}

ExpFactor ExpFactor::operator+(const ExpFactor& o) const
{
    int Q = lcm_int(q_, o.q_);
    ExpFactor a = at_ramification(Q), b = o.at_ramification(Q);
    std::map<int, Cyclotomic> m = a.c_;
    for (const auto& [k, c] : b.c_) m[k] += c;
    return ExpFactor(Q, m);
}

ExpFactor ExpFactor::operator-() const
{
    ExpFactor r = *this;
    for (auto& [k, c] : r.c_) c = -c;
    return r;
}

ExpFactor ExpFactor::rotated(int j) const
{
    std::map<int, Cyclotomic> m;
    for (const auto& [k, c] : c_) m[k] = c * Cyclotomic::zeta(q_, static_cast<long>(j) * k);
    return ExpFactor(q_, m);
}

Series ExpFactor::theta_series() const
{
    Series s(q_);
    for (const auto& [k, c] : c_) s += Series::monomial(ParamScalar(c * Cyclotomic(static_cast<long>(k))), k, q_);
    return s;
}

bool ExpFactor::operator==(const ExpFactor& o) const
{
    int Q = lcm_int(q_, o.q_);
    return at_ramification(Q).c_ == o.at_ramification(Q).c_;
}

int ExpFactor::common_order() const
{
    int n = 1;
    for (const auto& [k, c] : c_) n = lcm_int(n, c.order());
    return n;
}

std::string ExpFactor::to_string(const std::string& var) const
{
    if (c_.empty()) return "0";
    std::string v = q_ == 1 ? var : var + "_" + std::to_string(q_);
    std::string out;
    for (const auto& [k, c] : c_) {
        std::string mono = v + "^" + std::to_string(k);
        std::string term;
        if (c.is_one())
            term = mono;
        else if (c == Cyclotomic(-1))
            term = "-" + mono;
        else if (c.is_rational())
            term = c.to_string() + "*" + mono;
        else
            term = "(" + c.to_string() + ")*" + mono;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

bool exp_factor_less(const ExpFactor& a, const ExpFactor& b)
{
    if (a == b) return false;
    // pole order as a rational number pole/q
    long lhs = static_cast<long>(a.pole_order()) * b.q(), rhs = static_cast<long>(b.pole_order()) * a.q();
    if (lhs != rhs) return lhs < rhs;
    int Q = lcm_int(a.q(), b.q());
    ExpFactor x = a.at_ramification(Q), y = b.at_ramification(Q);
    auto ix = x.coeffs().begin(), iy = y.coeffs().begin();
    for (; ix != x.coeffs().end() && iy != y.coeffs().end(); ++ix, ++iy) {
        if (ix->first != iy->first) return ix->first < iy->first;
        int c = Cyclotomic::compare(ix->second, iy->second);
        if (c != 0) return c < 0;
    }
    return ix == x.coeffs().end() && iy != y.coeffs().end();
}

bool is_t_irreducible(const ExpFactor& phi)
{
    return phi.reduced().q() == phi.q();
}

}  // namespace wildcycle

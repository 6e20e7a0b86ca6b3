#include "wildcycle/param_scalar.hpp"

#include "wildcycle/errors.hpp"

namespace wildcycle {

ParamScalar::ParamScalar(const CycPoly& num, const CycPoly& den) : num_(num), den_(den)
{
    if (den_.is_zero()) fail(ErrorKind::InvalidArgument, "zero denominator");
    normalize();
}

void ParamScalar::normalize()
{
    if (num_.is_zero()) {
        den_ = CycPoly(Cyclotomic(1));
        return;
    }
    if (den_.is_constant()) {
        if (!den_.is_one()) {
            num_ = num_.scaled(den_.lead().inverse());
            den_ = CycPoly(Cyclotomic(1));
        }
        return;
    }
    CycPoly g = CycPoly::gcd(num_, den_);
    if (!g.is_one()) {
        CycPoly q, r;
        CycPoly::divmod(num_, g, q, r);
        num_ = q;
        CycPoly::divmod(den_, g, q, r);
        den_ = q;
    }
    if (!den_.lead().is_one()) {
        Cyclotomic s = den_.lead().inverse();
        num_ = num_.scaled(s);
        den_ = den_.scaled(s);
    }
}

Cyclotomic ParamScalar::constant_value() const
{
    check_internal(is_constant(), "constant_value on a lambda-dependent scalar");
    return num_.coeff(0);
}

ParamScalar ParamScalar::operator-() const
{
    ParamScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& o)
{
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& o) { return *this += -o; }

ParamScalar& ParamScalar::operator*=(const ParamScalar& o)
{
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = ParamScalar();
    if (den_.is_one() && o.den_.is_one()) {
        num_ = num_ * o.num_;
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

ParamScalar ParamScalar::inverse() const
{
    if (is_zero()) fail(ErrorKind::InvalidArgument, "division by zero in parameter field");
    return ParamScalar(den_, num_);
}

ParamScalar& ParamScalar::operator/=(const ParamScalar& o)
{
    if (o.is_constant()) {
        num_ = num_.scaled(o.constant_value().inverse());
        return *this;
    }
    return *this *= o.inverse();
}

Cyclotomic ParamScalar::eval(const Cyclotomic& l0) const
{
    Cyclotomic d = den_.eval(l0);
    if (d.is_zero()) fail(ErrorKind::DenominatorVanishes, "denominator " + den_.to_string("z") + " vanishes at " + l0.to_string());
    return num_.eval(l0) / d;
}

namespace {

std::string poly_expr(const CycPoly& p, const std::string& var)
{
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const Cyclotomic& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string cs = c.to_string();
        bool simple = c.is_rational();
        std::string term;
        if (mono.empty()) {
            term = simple ? cs : "(" + cs + ")";
        } else if (c.is_one()) {
            term = mono;
        } else if (simple && c == Cyclotomic(-1)) {
            term = "-" + mono;
        } else {
            term = (simple ? cs : "(" + cs + ")") + "*" + mono;
        }
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

}  // namespace

std::string ParamScalar::to_string(const std::string& var) const
{
    std::string n = poly_expr(num_, var);
    if (den_.is_one()) return n;
    return "(" + n + ")/(" + poly_expr(den_, var) + ")";
}

}  // namespace wildcycle

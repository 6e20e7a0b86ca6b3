#include "wildcycle/series.hpp"

#include "wildcycle/errors.hpp"

#include <algorithm>

namespace wildcycle {

int sat_add(int a, int b)
{
    if (a >= kExact || b >= kExact) return kExact;
    long s = static_cast<long>(a) + b;
    if (s >= kExact) return kExact;
    return static_cast<int>(s);
}

Series Series::constant(const ParamScalar& c, int q)
{
    return from_coeffs(q, 0, {c}, kExact);
}

Series Series::monomial(const ParamScalar& c, int k, int q)
{
    return from_coeffs(q, k, {c}, kExact);
}

Series Series::zero_to(int prec, int q)
{
    Series s(q);
    s.prec_ = prec;
    s.val_ = prec;
    return s;
}

Series Series::from_coeffs(int q, int val, std::vector<ParamScalar> coeffs, int prec)
{
    Series s(q);
    s.val_ = val;
    s.prec_ = prec;
    s.c_ = std::move(coeffs);
    if (s.end() > prec) s.c_.resize(std::max(0, prec - val));
    s.normalize();
    return s;
}

void Series::normalize()
{
    if (prec_ > kExact) prec_ = kExact;
    size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        val_ = prec_;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + lead);
        val_ += static_cast<int>(lead);
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ParamScalar Series::coeff(int n) const
{
    if (n >= prec_) fail(ErrorKind::InsufficientTruncation, "coefficient of t^" + std::to_string(n) + " is beyond the guaranteed order " + std::to_string(prec_));
    if (n < val_ || n >= end()) return ParamScalar();
    return c_[n - val_];
}

Series Series::with_precision(int p) const
{
    if (p >= prec_) return *this;
    Series s = *this;
    s.prec_ = p;
    if (s.val_ >= p) {
        s.c_.clear();
        s.val_ = p;
        return s;
    }
    if (s.end() > p) s.c_.resize(p - s.val_);
    s.normalize();
    return s;
}

Series Series::operator-() const
{
    Series s = *this;
    for (auto& x : s.c_) x = -x;
    return s;
}

namespace {

int merge_q(const Series& a, const Series& b)
{
    if (a.q() == b.q()) return a.q();
    if (a.is_q_free()) return b.q();
    if (b.is_q_free()) return a.q();
    fail(ErrorKind::Internal, "series with different ramification combined");
}

}  // namespace

Series& Series::operator+=(const Series& o)
{
    int q = merge_q(*this, o);
    q_ = q;
    int p = std::min(prec_, o.prec_);
    if (o.c_.empty()) {
        if (o.prec_ < prec_) *this = with_precision(o.prec_);
        q_ = q;
        return *this;
    }
    if (c_.empty()) {
        Series r = o.with_precision(p);
        r.q_ = q;
        return *this = r;
    }
    int lo = std::min(val_, o.val_);
    int hi = std::min(p, std::max(end(), o.end()));
    std::vector<ParamScalar> v(std::max(0, hi - lo));
    for (int n = val_; n < std::min(end(), hi); ++n) v[n - lo] = c_[n - val_];
    for (int n = o.val_; n < std::min(o.end(), hi); ++n) v[n - lo] += o.c_[n - o.val_];
    val_ = lo;
    prec_ = p;
    c_ = std::move(v);
    if (lo >= p) {
        c_.clear();
        val_ = p;
    }
    normalize();
    return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series operator*(const Series& a, const Series& b)
{
    int q = merge_q(a, b);
    if (a.is_exact_zero() || b.is_exact_zero()) return Series(q);
    int p = std::min(sat_add(a.prec_, b.val_), sat_add(b.prec_, a.val_));
    Series r(q);
    r.prec_ = p;
    if (a.c_.empty() || b.c_.empty()) {
        r.val_ = p;
        return r;
    }
    int lo = a.val_ + b.val_;
    int hi = std::min(p, a.end() + b.end() - 1);
    if (hi <= lo) {
        r.val_ = p;
        return r;
    }
    std::vector<ParamScalar> v(hi - lo);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        int ni = a.val_ + static_cast<int>(i);
        for (size_t j = 0; j < b.c_.size(); ++j) {
            int n = ni + b.val_ + static_cast<int>(j);
            if (n >= hi) break;
            if (b.c_[j].is_zero()) continue;
            v[n - lo] += a.c_[i] * b.c_[j];
        }
    }
    r.val_ = lo;
    r.c_ = std::move(v);
    r.normalize();
    return r;
}

Series Series::scaled(const ParamScalar& s) const
{
    if (s.is_zero()) return Series(q_);
    Series r = *this;
    if (s.is_one()) return r;
    for (auto& x : r.c_) x *= s;
    return r;
}

bool operator==(const Series& a, const Series& b)
{
    if (a.c_.empty() && b.c_.empty()) return a.prec_ == b.prec_;
    return a.q_ == b.q_ && a.val_ == b.val_ && a.prec_ == b.prec_ && a.c_ == b.c_;
}

Series Series::inverse(int cap) const
{
    if (c_.empty())
        fail(ErrorKind::InsufficientTruncation, "cannot invert a series that is zero up to its guaranteed order " + std::to_string(prec_));
    int v = val_;
    if (is_exact() && c_.size() == 1) return monomial(c_[0].inverse(), -v, q_);
    int p;
    if (is_exact()) {
        check_internal(cap < kExact, "inverse of an exact non-monomial series needs a precision cap");
        p = cap;
    } else {
        p = std::min(prec_ - 2 * v, cap);
    }
    int rel = p + v;  // number of coefficients of the unit part
    Series r(q_);
    r.prec_ = p;
    if (rel <= 0) {
        r.val_ = p;
        return r;
    }
    std::vector<ParamScalar> w(rel);
    ParamScalar u0inv = c_[0].inverse();
    w[0] = u0inv;
    for (int n = 1; n < rel; ++n) {
        ParamScalar s;
        for (int k = 1; k <= n && k < static_cast<int>(c_.size()); ++k) {
            if (c_[k].is_zero() || w[n - k].is_zero()) continue;
            s += c_[k] * w[n - k];
        }
        if (!s.is_zero()) w[n] = -(s * u0inv);
    }
    r.val_ = -v;
    r.c_ = std::move(w);
    r.normalize();
    return r;
}

Series Series::theta() const
{
    Series r = *this;
    for (size_t i = 0; i < r.c_.size(); ++i) {
        int n = val_ + static_cast<int>(i);
        if (n == 0)
            r.c_[i] = ParamScalar();
        else if (n != 1)
            r.c_[i] *= ParamScalar(n);
    }
    r.normalize();
    return r;
}

Series Series::shifted(int k) const
{
    Series r = *this;
    if (r.c_.empty() && r.is_exact()) return r;
    r.val_ += k;
    if (!r.is_exact()) r.prec_ += k;
    return r;
}

Series Series::ramified(int r) const
{
    if (r == 1) return *this;
    Series s(q_ * r);
    s.prec_ = is_exact() ? kExact : prec_ * r;
    if (c_.empty()) {
        s.val_ = s.prec_;
        return s;
    }
    s.val_ = val_ * r;
    s.c_.assign((c_.size() - 1) * r + 1, ParamScalar());
    for (size_t i = 0; i < c_.size(); ++i) s.c_[i * r] = c_[i];
    return s;
}

Series Series::with_q(int q) const
{
    if (q == q_) return *this;
    check_internal(is_q_free(), "with_q on a t-dependent series");
    Series r = *this;
    r.q_ = q;
    return r;
}

Series Series::eval_lambda(const Cyclotomic& l0) const
{
    Series r = *this;
    for (auto& x : r.c_) x = ParamScalar(x.eval(l0));
    r.normalize();
    return r;
}

int Series::common_order() const
{
    int n = 1;
    for (const auto& x : c_) n = lcm_int(n, x.common_order());
    return n;
}

bool agree_below(const Series& a, const Series& b, int p)
{
    if (a.precision() < p || b.precision() < p) return false;
    int lo = std::min(a.valuation(), b.valuation());
    for (int n = lo; n < p; ++n)
        if (a.coeff(n) != b.coeff(n)) return false;
    return true;
}

std::string Series::to_string(const std::string& var, const std::string& lvar) const
{
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        int n = val_ + static_cast<int>(i);
        const ParamScalar& c = c_[i];
        std::string mono = n == 0 ? "" : (n == 1 ? var : var + "^" + std::to_string(n));
        std::string cs = c.to_string(lvar);
        bool simple = c.is_constant() && c.constant_value().is_rational();
        std::string term;
        if (mono.empty())
            term = simple ? cs : "(" + cs + ")";
        else if (c.is_one())
            term = mono;
        else if (simple && c == ParamScalar(-1))
            term = "-" + mono;
        else
            term = (simple ? cs : "(" + cs + ")") + "*" + mono;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    if (!is_exact()) {
        std::string o = "O(" + var + "^" + std::to_string(prec_) + ")";
        out += out.empty() ? o : " + " + o;
    }
    if (out.empty()) out = "0";
    return out;
}

}  // namespace wildcycle

#include "wildcycle/cyclotomic.hpp"

#include "wildcycle/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace wildcycle {

using QVec = std::vector<mpq_class>;

const std::vector<mpz_class>& cyclotomic_polynomial_slow(int n);

int euler_phi(int n)
{
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

namespace {

// exact division by a monic polynomial
std::vector<mpz_class> zpoly_div(std::vector<mpz_class> a, const std::vector<mpz_class>& b)
{
    size_t db = b.size() - 1;
    std::vector<mpz_class> q(a.size() - db, 0);
    for (size_t i = a.size(); i-- > db;) {
        mpz_class c = a[i];
        q[i - db] = c;
        for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

std::vector<mpz_class> compute_cyclotomic(int n)
{
    // x^n - 1 divided by all Phi_d, d | n, d < n
    std::vector<mpz_class> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = zpoly_div(p, cyclotomic_polynomial(d));
    return p;
}

void reduce_mod(QVec& p, int n)
{
    const auto& phi = cyclotomic_polynomial(n);
    size_t d = phi.size() - 1;
    for (size_t i = p.size(); i-- > d;) {
        if (p[i] == 0) continue;
        mpq_class c = p[i];
        for (size_t j = 0; j < d; ++j)
            if (phi[j] != 0) p[i - d + j] -= c * phi[j];
        p[i] = 0;
    }
    if (p.size() > d) p.resize(d);
}

void qtrim(QVec& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// polynomial division over Q: a = q*b + r
void qdivmod(const QVec& a, const QVec& b, QVec& q, QVec& r)
{
    r = a;
    qtrim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
    while (r.size() >= b.size() && !r.empty()) {
        size_t shift = r.size() - b.size();
        mpq_class c = r.back() / b.back();
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
        qtrim(r);
    }
    qtrim(q);
}

QVec qmul(const QVec& a, const QVec& b)
{
    if (a.empty() || b.empty()) return {};
    QVec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

QVec qsub(const QVec& a, const QVec& b)
{
    QVec r = a;
    if (r.size() < b.size()) r.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    qtrim(r);
    return r;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(int n)
{
    thread_local std::vector<const std::vector<mpz_class>*> fast(64, nullptr);
    if (n > 0 && n < 64 && fast[n]) return *fast[n];
    const auto& r = cyclotomic_polynomial_slow(n);
    if (n > 0 && n < 64) fast[n] = &r;
    return r;
}

const std::vector<mpz_class>& cyclotomic_polynomial_slow(int n)
{
    static std::mutex mu;
    static std::map<int, std::vector<mpz_class>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    if (n < 1) fail(ErrorKind::InvalidArgument, "cyclotomic order must be positive");
    std::vector<mpz_class> p;
    if (n == 1)
        p = {-1, 1};
    else
        p = compute_cyclotomic(n);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(int order, std::vector<mpq_class> coeffs) : order_(order), c_(std::move(coeffs))
{
    if (order_ < 1) fail(ErrorKind::InvalidArgument, "cyclotomic order must be positive");
    reduce_mod(c_, order_);
    trim();
}

void Cyclotomic::trim()
{
    qtrim(c_);
    if (c_.size() <= 1) order_ = 1;
}

Cyclotomic Cyclotomic::zeta(int n, long power)
{
    if (n < 1) fail(ErrorKind::InvalidArgument, "cyclotomic order must be positive");
    long e = ((power % n) + n) % n;
    QVec v(e + 1, 0);
    v[e] = 1;
    return Cyclotomic(n, std::move(v));
}

Cyclotomic Cyclotomic::gaussian(const mpq_class& re, const mpq_class& im)
{
    if (im == 0) return Cyclotomic(re);
    return Cyclotomic(4, {re, im});
}

mpq_class Cyclotomic::rational_value() const
{
    check_internal(is_rational(), "rational_value on irrational element");
    return c_.empty() ? mpq_class(0) : c_[0];
}

Cyclotomic Cyclotomic::lifted(int m) const
{
    if (m == order_ || c_.size() <= 1) {
        Cyclotomic r = *this;
        if (c_.size() > 1) r.order_ = m;
        return r;
    }
    if (m % order_ != 0) fail(ErrorKind::Internal, "cyclotomic lift to a non-multiple order");
    int s = m / order_;
    QVec v((c_.size() - 1) * s + 1, 0);
    for (size_t k = 0; k < c_.size(); ++k) v[k * s] = c_[k];
    return Cyclotomic(m, std::move(v));
}

Cyclotomic Cyclotomic::minimized() const
{
    if (c_.size() <= 1) return *this;
    int n = order_;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        // membership: fixed by every automorphism j == 1 mod d
        bool fixed = true;
        for (int j = 1 + d; j < n && fixed; j += d)
            if (std::gcd(j, n) == 1 && galois(j) != *this) fixed = false;
        if (!fixed) continue;
        // solve for coordinates in the basis lifted zeta_d^k
        int pd = euler_phi(d);
        int pn = euler_phi(n);
        std::vector<QVec> cols;
        for (int k = 0; k < pd; ++k) {
            QVec col = Cyclotomic::zeta(d, k).lifted(n).c_;
            col.resize(pn, 0);
            cols.push_back(col);
        }
        QVec target = c_;
        target.resize(pn, 0);
        // Gaussian elimination on the augmented pn x (pd+1) system
        std::vector<QVec> rows(pn, QVec(pd + 1, 0));
        for (int i = 0; i < pn; ++i) {
            for (int k = 0; k < pd; ++k) rows[i][k] = cols[k][i];
            rows[i][pd] = target[i];
        }
        int r = 0;
        std::vector<int> pivcol;
        for (int k = 0; k < pd && r < pn; ++k) {
            int piv = -1;
            for (int i = r; i < pn; ++i)
                if (rows[i][k] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(rows[r], rows[piv]);
            for (int i = 0; i < pn; ++i) {
                if (i == r || rows[i][k] == 0) continue;
                mpq_class f = rows[i][k] / rows[r][k];
                for (int c = k; c <= pd; ++c) rows[i][c] -= f * rows[r][c];
            }
            pivcol.push_back(k);
            ++r;
        }
        QVec sol(pd, 0);
        for (int i = 0; i < r; ++i) sol[pivcol[i]] = rows[i][pd] / rows[i][pivcol[i]];
        Cyclotomic cand(d, sol);
        if (cand.lifted(n) == *this) return cand;
    }
    return *this;
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o)
{
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    if (order_ != o.order_ && o.c_.size() > 1 && c_.size() > 1) {
        int m = lcm_int(order_, o.order_);
        *this = lifted(m);
        Cyclotomic b = o.lifted(m);
        return *this += b;
    }
    if (o.c_.size() > 1) order_ = o.order_;
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o)
{
    if (c_.empty()) return *this;
    if (o.c_.empty()) return *this = Cyclotomic();
    if (o.c_.size() == 1) {
        for (auto& x : c_) x *= o.c_[0];
        return *this;
    }
    if (c_.size() == 1) {
        mpq_class s = c_[0];
        *this = o;
        for (auto& x : c_) x *= s;
        return *this;
    }
    int m = lcm_int(order_, o.order_);
    QVec a = lifted(m).c_, b = o.lifted(m).c_;
    QVec p = qmul(a, b);
    reduce_mod(p, m);
    order_ = m;
    c_ = std::move(p);
    trim();
    return *this;
}

Cyclotomic Cyclotomic::inverse() const
{
    if (c_.empty()) fail(ErrorKind::InvalidArgument, "division by zero in cyclotomic field");
    if (c_.size() == 1) return Cyclotomic(mpq_class(1) / c_[0]);
    // extended Euclid: u*a + v*Phi = 1
    const auto& phz = cyclotomic_polynomial(order_);
    QVec phi(phz.begin(), phz.end());
    QVec r0 = phi, r1 = c_, s0, s1 = {1};
    while (!(r1.size() == 1)) {
        QVec q, r;
        qdivmod(r0, r1, q, r);
        QVec s = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        check_internal(!r1.empty(), "cyclotomic inverse: non-coprime");
    }
    mpq_class inv = mpq_class(1) / r1[0];
    for (auto& x : s1) x *= inv;
    return Cyclotomic(order_, s1);
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.c_.size() <= 1 || b.c_.size() <= 1) return a.c_ == b.c_;
    if (a.order_ == b.order_) return a.c_ == b.c_;
    int m = lcm_int(a.order_, b.order_);
    return a.lifted(m).c_ == b.lifted(m).c_;
}

Cyclotomic Cyclotomic::pow(long e) const
{
    if (e < 0) return inverse().pow(-e);
    Cyclotomic r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Cyclotomic Cyclotomic::galois(int j) const
{
    if (c_.size() <= 1) return *this;
    int n = order_;
    int jj = ((j % n) + n) % n;
    QVec v(n, 0);
    for (size_t k = 0; k < c_.size(); ++k) v[(k * jj) % n] += c_[k];
    return Cyclotomic(n, std::move(v));
}

Cyclotomic Cyclotomic::conj() const { return galois(order_ - 1); }

bool Cyclotomic::gaussian_parts(mpq_class& re, mpq_class& im) const
{
    if (c_.size() <= 1) {
        re = c_.empty() ? mpq_class(0) : c_[0];
        im = 0;
        return true;
    }
    if (order_ % 4 != 0) return false;
    Cyclotomic cj = conj();
    Cyclotomic r = (*this + cj) * Cyclotomic(mpq_class(1, 2));
    Cyclotomic b = (*this - cj) * Cyclotomic::gaussian(0, mpq_class(-1, 2));
    if (!r.is_rational() || !b.is_rational()) return false;
    re = r.rational_value();
    im = b.rational_value();
    return true;
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a == b) return 0;
    Cyclotomic x = a.minimized(), y = b.minimized();
    if (x.order_ != y.order_) return x.order_ < y.order_ ? -1 : 1;
    size_t n = std::max(x.c_.size(), y.c_.size());
    for (size_t i = 0; i < n; ++i) {
        mpq_class u = i < x.c_.size() ? x.c_[i] : mpq_class(0);
        mpq_class v = i < y.c_.size() ? y.c_[i] : mpq_class(0);
        if (u != v) return u < v ? -1 : 1;
    }
    return 0;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

namespace {

void append_term(std::string& out, const mpq_class& c, const std::string& unit)
{
    bool neg = c < 0;
    mpq_class a = neg ? mpq_class(-c) : c;
    std::string body;
    if (unit.empty())
        body = a.get_str();
    else if (a == 1)
        body = unit;
    else
        body = a.get_str() + "*" + unit;
    if (out.empty())
        out = neg ? "-" + body : body;
    else
        out += (neg ? " - " : " + ") + body;
}

}  // namespace

std::string Cyclotomic::to_string() const
{
    Cyclotomic m = minimized();
    if (m.c_.empty()) return "0";
    mpq_class re, im;
    if (m.gaussian_parts(re, im)) {
        std::string out;
        if (re != 0) append_term(out, re, "");
        if (im != 0) append_term(out, im, "i");
        return out;
    }
    std::string out;
    std::string z = "zeta" + std::to_string(m.order_);
    for (size_t k = 0; k < m.c_.size(); ++k) {
        if (m.c_[k] == 0) continue;
        std::string unit = k == 0 ? "" : (k == 1 ? z : z + "^" + std::to_string(k));
        append_term(out, m.c_[k], unit);
    }
    return out;
}

const char* error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorKind::NotStarShaped: return "NotStarShaped";
    case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorKind::UnsupportedAlgebraicExtension: return "UnsupportedAlgebraicExtension";
    case ErrorKind::SpectrumNotSplit: return "SpectrumNotSplit";
    case ErrorKind::SingularGauge: return "SingularGauge";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::LambdaDependentSpectrum: return "LambdaDependentSpectrum";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace wildcycle

#include "wildcycle/cycpoly.hpp"

#include "wildcycle/errors.hpp"

namespace wildcycle {

void CycPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

CycPoly CycPoly::monomial(const Cyclotomic& c, int deg)
{
    if (c.is_zero()) return CycPoly();
    std::vector<Cyclotomic> v(deg + 1);
    v[deg] = c;
    return CycPoly(std::move(v));
}

CycPoly CycPoly::operator-() const
{
    CycPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycPoly& CycPoly::operator+=(const CycPoly& o)
{
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

CycPoly& CycPoly::operator-=(const CycPoly& o)
{
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

CycPoly operator*(const CycPoly& a, const CycPoly& b)
{
    if (a.c_.empty() || b.c_.empty()) return CycPoly();
    int n = 1;
    for (const auto& x : a.c_) n = lcm_int(n, x.order());
    for (const auto& x : b.c_) n = lcm_int(n, x.order());
    size_t m = a.c_.size() + b.c_.size() - 1;
    // accumulate unreduced products and reduce each output coefficient once
    std::vector<std::vector<mpq_class>> la(a.c_.size()), lb(b.c_.size());
    for (size_t i = 0; i < a.c_.size(); ++i) la[i] = a.c_[i].lifted(n).coeffs();
    for (size_t j = 0; j < b.c_.size(); ++j) lb[j] = b.c_[j].lifted(n).coeffs();
    std::vector<std::vector<mpq_class>> acc(m);
    mpq_class tmp;
    for (size_t i = 0; i < la.size(); ++i) {
        if (la[i].empty()) continue;
        for (size_t j = 0; j < lb.size(); ++j) {
            if (lb[j].empty()) continue;
            auto& r = acc[i + j];
            if (r.size() < la[i].size() + lb[j].size() - 1) r.resize(la[i].size() + lb[j].size() - 1);
            for (size_t u = 0; u < la[i].size(); ++u) {
                if (sgn(la[i][u]) == 0) continue;
                for (size_t v = 0; v < lb[j].size(); ++v) {
                    if (sgn(lb[j][v]) == 0) continue;
                    mpq_mul(tmp.get_mpq_t(), la[i][u].get_mpq_t(), lb[j][v].get_mpq_t());
                    mpq_add(r[u + v].get_mpq_t(), r[u + v].get_mpq_t(), tmp.get_mpq_t());
                }
            }
        }
    }
    std::vector<Cyclotomic> out(m);
    for (size_t k = 0; k < m; ++k)
        if (!acc[k].empty()) out[k] = Cyclotomic(n, std::move(acc[k]));
    return CycPoly(std::move(out));
}

CycPoly CycPoly::scaled(const Cyclotomic& s) const
{
    if (s.is_zero()) return CycPoly();
    CycPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

CycPoly CycPoly::monic() const
{
    if (c_.empty() || c_.back().is_one()) return *this;
    return scaled(c_.back().inverse());
}

CycPoly CycPoly::derivative() const
{
    std::vector<Cyclotomic> r;
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * Cyclotomic(static_cast<long>(i)));
    return CycPoly(std::move(r));
}

Cyclotomic CycPoly::eval(const Cyclotomic& x) const
{
    Cyclotomic r;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

CycPoly CycPoly::rescaled(const Cyclotomic& s) const
{
    CycPoly r = *this;
    Cyclotomic p(1);
    for (auto& x : r.c_) {
        x *= p;
        p *= s;
    }
    r.trim();
    return r;
}

int CycPoly::common_order() const
{
    int n = 1;
    for (const auto& x : c_) n = lcm_int(n, x.order());
    return n;
}

void CycPoly::divmod(const CycPoly& a, const CycPoly& b, CycPoly& q, CycPoly& r)
{
    if (b.is_zero()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
    r = a;
    int db = b.degree();
    if (r.degree() < db) {
        q = CycPoly();
        return;
    }
    std::vector<Cyclotomic> qc(r.degree() - db + 1);
    Cyclotomic binv = b.lead().inverse();
    bool monic_b = b.lead().is_one();
    while (!r.is_zero() && r.degree() >= db) {
        int shift = r.degree() - db;
        Cyclotomic c = monic_b ? r.lead() : r.lead() * binv;
        qc[shift] = c;
        for (int j = 0; j <= db; ++j)
            if (!b.c_[j].is_zero()) r.c_[shift + j] -= c * b.c_[j];
        r.c_.back() = Cyclotomic();
        r.trim();
    }
    q = CycPoly(std::move(qc));
}

CycPoly CycPoly::gcd(const CycPoly& a, const CycPoly& b)
{
    CycPoly x = a, y = b;
    while (!y.is_zero()) {
        CycPoly q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

std::string CycPoly::to_string(const std::string& var) const
{
    if (c_.empty()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string cs = c_[i].to_string();
        std::string term;
        if (mono.empty())
            term = "(" + cs + ")";
        else if (c_[i].is_one())
            term = mono;
        else
            term = "(" + cs + ")*" + mono;
        out += out.empty() ? term : " + " + term;
    }
    return out;
}

}  // namespace wildcycle

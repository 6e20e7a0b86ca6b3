#include "wildcycle/roots.hpp"

#include "wildcycle/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>

namespace wildcycle {

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // constant term first, trimmed

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p)
{
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void mtrim(ModPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, u64 p)
{
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    mtrim(r);
    return r;
}

void mdivmod(const ModPoly& a, const ModPoly& b, u64 p, ModPoly& q, ModPoly& r)
{
    r = a;
    mtrim(r);
    q.clear();
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    u64 inv = powmod(b.back(), p - 2, p);
    while (!r.empty() && r.size() >= b.size()) {
        size_t s = r.size() - b.size();
        u64 c = mulmod(r.back(), inv, p);
        q[s] = c;
        for (size_t j = 0; j < b.size(); ++j) r[s + j] = (r[s + j] + p - mulmod(c, b[j], p)) % p;
        mtrim(r);
    }
    mtrim(q);
}

ModPoly mmod(const ModPoly& a, const ModPoly& b, u64 p)
{
    ModPoly q, r;
    mdivmod(a, b, p, q, r);
    return r;
}

ModPoly mmonic(ModPoly a, u64 p)
{
    if (a.empty()) return a;
    u64 inv = powmod(a.back(), p - 2, p);
    for (auto& x : a) x = mulmod(x, inv, p);
    return a;
}

ModPoly mgcd(ModPoly a, ModPoly b, u64 p)
{
    mtrim(a);
    mtrim(b);
    while (!b.empty()) {
        ModPoly r = mmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return mmonic(a, p);
}

ModPoly msub(ModPoly a, const ModPoly& b, u64 p)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    mtrim(a);
    return a;
}

// base^e mod f
ModPoly mpowmod(const ModPoly& base, u64 e, const ModPoly& f, u64 p)
{
    ModPoly r = {1};
    ModPoly b = mmod(base, f, p);
    while (e) {
        if (e & 1) r = mmod(mmul(r, b, p), f, p);
        b = mmod(mmul(b, b, p), f, p);
        e >>= 1;
    }
    return r;
}

ModPoly mderiv(const ModPoly& a, u64 p)
{
    ModPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], i % p, p));
    mtrim(r);
    return r;
}

// roots of a squarefree polynomial that splits into distinct linear factors mod p
void equal_degree_roots(const ModPoly& f, u64 p, std::mt19937_64& rng, std::vector<u64>& out)
{
    if (f.size() <= 1) return;
    if (f.size() == 2) {
        u64 inv = powmod(f[1], p - 2, p);
        out.push_back((p - mulmod(f[0], inv, p)) % p);
        return;
    }
    for (;;) {
        u64 a = rng() % p;
        ModPoly h = mpowmod(ModPoly{a, 1}, (p - 1) / 2, f, p);
        h = msub(h, ModPoly{1}, p);
        ModPoly g = mgcd(f, h, p);
        if (g.size() > 1 && g.size() < f.size()) {
            ModPoly q, r;
            mdivmod(f, g, p, q, r);
            equal_degree_roots(g, p, rng, out);
            equal_degree_roots(mmonic(q, p), p, rng, out);
            return;
        }
    }
}

std::vector<u64> roots_mod_p(const ModPoly& f, u64 p, std::mt19937_64& rng)
{
    ModPoly xp = mpowmod(ModPoly{0, 1}, p, f, p);
    ModPoly g = mgcd(f, msub(xp, ModPoly{0, 1}, p), p);
    std::vector<u64> out;
    equal_degree_roots(g, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

mpz_class zmod(const mpz_class& a, const mpz_class& m)
{
    mpz_class r = a % m;
    if (r < 0) r += m;
    return r;
}

mpz_class zinv(const mpz_class& a, const mpz_class& m)
{
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) fail(ErrorKind::Internal, "non-invertible residue in root lifting");
    return r;
}

mpz_class zeval(const std::vector<mpz_class>& f, const mpz_class& x, const mpz_class& m)
{
    mpz_class r = 0;
    for (size_t i = f.size(); i-- > 0;) r = zmod(r * x + f[i], m);
    return r;
}

std::vector<mpz_class> zderiv(const std::vector<mpz_class>& f)
{
    std::vector<mpz_class> r;
    for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * static_cast<unsigned long>(i));
    return r;
}

// Newton lifting of a simple root r of f mod p to mod p^k
mpz_class hensel(const std::vector<mpz_class>& f, u64 r, u64 p, const mpz_class& pk)
{
    std::vector<mpz_class> df = zderiv(f);
    mpz_class x = r;
    mpz_class m = p;
    while (m < pk) {
        m = m * m;
        if (m > pk) m = pk;
        mpz_class fx = zeval(f, x, m), dfx = zeval(df, x, m);
        x = zmod(x - fx * zinv(dfx, m), m);
    }
    return x;
}

std::vector<int> prime_factors(int n)
{
    std::vector<int> r;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            r.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) r.push_back(n);
    return r;
}

CycPoly squarefree_part(const CycPoly& p)
{
    CycPoly g = CycPoly::gcd(p, p.derivative());
    if (g.degree() <= 0) return p.monic();
    CycPoly q, r;
    CycPoly::divmod(p, g, q, r);
    return q.monic();
}

std::vector<mpq_class> coords(const Cyclotomic& c, int order, int phi)
{
    std::vector<mpq_class> v = c.lifted(order).coeffs();
    if (c.is_rational() && order > 1) v = c.coeffs();
    v.resize(phi, 0);
    return v;
}

}  // namespace

RootSet roots_in_field(const CycPoly& poly, int order)
{
    RootSet res;
    res.order = order;
    res.remaining = poly;
    if (poly.degree() <= 0) return res;
    int phi = euler_phi(order);
    CycPoly s = squarefree_part(poly);
    int d = s.degree();

    std::vector<std::pair<Cyclotomic, int>> found;
    auto record = [&](const Cyclotomic& a) {
        for (auto& f : found)
            if (f.first == a) return;
        found.push_back({a, 0});
    };

    // zero root handled directly keeps the integral transform simple
    if (s.coeff(0).is_zero()) {
        record(Cyclotomic(0));
        CycPoly q, r;
        CycPoly::divmod(s, CycPoly::x(), q, r);
        s = q;
        d = s.degree();
    }

    if (d == 1) {
        record(-s.coeff(0) / s.coeff(1));
    } else if (d > 1) {
        // integral monic T(X) = D^d S(X/D)
        mpz_class D = 1;
        std::vector<std::vector<mpq_class>> sc(d + 1);
        for (int i = 0; i <= d; ++i) {
            sc[i] = coords(s.coeff(i), order, phi);
            for (const auto& x : sc[i]) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.get_den_mpz_t());
        }
        std::vector<std::vector<mpz_class>> tc(d + 1, std::vector<mpz_class>(phi));
        mpz_class H = 0;
        for (int i = 0; i <= d; ++i) {
            mpz_class dp;
            mpz_pow_ui(dp.get_mpz_t(), D.get_mpz_t(), d - i);
            mpz_class sum = 0;
            for (int m = 0; m < phi; ++m) {
                mpq_class v = sc[i][m] * mpq_class(dp);
                check_internal(v.get_den() == 1, "non-integral transform in root finding");
                tc[i][m] = v.get_num();
                sum += abs(tc[i][m]);
            }
            if (sum > H) H = sum;
        }
        mpz_class had = 1;
        if (phi > 1) {
            // ceil((phi-1)^((phi-1)/2)) bounded by (phi-1)^ceil((phi-1)/2)
            mpz_pow_ui(had.get_mpz_t(), mpz_class(phi - 1).get_mpz_t(), (phi - 1 + 1) / 2);
        }
        mpz_class B = mpz_class(phi) * had * (H + 1) + 1;

        std::mt19937_64 rng(0x5eed1234ULL + order * 7919ULL + d);
        u64 p = ((1ULL << 30) / order) * order + 1;
        std::vector<int> units;
        for (int j = 1; j <= order; ++j)
            if (std::gcd(j, order) == 1) units.push_back(j % order);
        std::vector<int> pf = prime_factors(order);

        std::vector<std::vector<u64>> rts;
        u64 w = 1;
        for (int attempt = 0;; ++attempt) {
            check_internal(attempt < 10000, "no suitable prime for root finding");
            p += order;
            if (order % 2 == 1 && p % 2 == 0) continue;
            if (!is_prime(p)) continue;
            // primitive order-th root of unity
            w = 1;
            if (order > 1) {
                for (u64 g = 2;; ++g) {
                    u64 c = powmod(g, (p - 1) / order, p);
                    bool prim = true;
                    for (int r : pf)
                        if (powmod(c, order / r, p) == 1) prim = false;
                    if (prim) {
                        w = c;
                        break;
                    }
                }
            }
            bool ok = true;
            rts.clear();
            for (int j : units) {
                u64 wj = powmod(w, j, p);
                ModPoly f(d + 1, 0);
                for (int i = 0; i <= d; ++i) {
                    u64 acc = 0, pw = 1;
                    for (int m = 0; m < phi; ++m) {
                        mpz_class t = zmod(tc[i][m], mpz_class(static_cast<unsigned long>(p)));
                        acc = (acc + mulmod(t.get_ui(), pw, p)) % p;
                        pw = mulmod(pw, wj, p);
                    }
                    f[i] = acc;
                }
                mtrim(f);
                if (static_cast<int>(f.size()) != d + 1 || mgcd(f, mderiv(f, p), p).size() > 1) {
                    ok = false;
                    break;
                }
                rts.push_back(roots_mod_p(f, p, rng));
            }
            if (ok) break;
        }

        bool any_empty = false;
        for (const auto& r : rts) any_empty = any_empty || r.empty();
        if (!any_empty) {
            mpz_class pk = p;
            while (pk <= 2 * B) pk *= p;
            mpz_class P = p;
            // lift w to a root of X^order - 1 mod pk
            std::vector<mpz_class> cyc(order + 1, 0);
            cyc[0] = -1;
            cyc[order] = 1;
            mpz_class W = order > 1 ? hensel(cyc, w, p, pk) : mpz_class(1);
            int ne = static_cast<int>(units.size());
            std::vector<std::vector<mpz_class>> lifted(ne);
            std::vector<mpz_class> Wj(ne);
            for (int e = 0; e < ne; ++e) {
                mpz_powm_ui(Wj[e].get_mpz_t(), W.get_mpz_t(), units[e], pk.get_mpz_t());
                std::vector<mpz_class> f(d + 1);
                for (int i = 0; i <= d; ++i) {
                    mpz_class acc = 0, pw = 1;
                    for (int m = 0; m < phi; ++m) {
                        acc = zmod(acc + tc[i][m] * pw, pk);
                        pw = zmod(pw * Wj[e], pk);
                    }
                    f[i] = acc;
                }
                for (u64 r : rts[e]) lifted[e].push_back(hensel(f, r, p, pk));
            }
            // inverse Vandermonde mod pk: rows embeddings, cols powers
            std::vector<std::vector<mpz_class>> V(ne, std::vector<mpz_class>(2 * ne, 0));
            for (int e = 0; e < ne; ++e) {
                mpz_class pw = 1;
                for (int m = 0; m < phi; ++m) {
                    V[e][m] = pw;
                    pw = zmod(pw * Wj[e], pk);
                }
                V[e][ne + e] = 1;
            }
            for (int c = 0; c < ne; ++c) {
                int piv = -1;
                for (int r = c; r < ne; ++r)
                    if (zmod(V[r][c], P) != 0) { piv = r; break; }
                check_internal(piv >= 0, "singular Vandermonde in root finding");
                std::swap(V[piv], V[c]);
                mpz_class inv = zinv(V[c][c], pk);
                for (auto& x : V[c]) x = zmod(x * inv, pk);
                for (int r = 0; r < ne; ++r) {
                    if (r == c || V[r][c] == 0) continue;
                    mpz_class f = V[r][c];
                    for (int k = 0; k < 2 * ne; ++k) V[r][k] = zmod(V[r][k] - f * V[c][k], pk);
                }
            }
            mpz_class half = pk / 2;
            long combos = 1;
            for (const auto& l : lifted) combos *= static_cast<long>(l.size());
            // oversized searches only arise for fields far from the input's needs; report no roots there
            if (combos > 200000) rts.clear(), combos = 0;
            std::vector<int> idx(ne, 0);
            for (long c = 0; c < combos; ++c) {
                long rem = c;
                for (int e = 0; e < ne; ++e) {
                    idx[e] = static_cast<int>(rem % static_cast<long>(lifted[e].size()));
                    rem /= static_cast<long>(lifted[e].size());
                }
                std::vector<mpq_class> b(phi);
                bool inside = true;
                for (int m = 0; m < phi && inside; ++m) {
                    mpz_class acc = 0;
                    for (int e = 0; e < ne; ++e) acc += V[m][ne + e] * lifted[e][idx[e]];
                    acc = zmod(acc, pk);
                    if (acc > half) acc -= pk;
                    if (abs(acc) > B) inside = false;
                    b[m] = mpq_class(acc, D);
                    b[m].canonicalize();
                }
                if (!inside) continue;
                Cyclotomic cand(order, b);
                if (s.eval(cand).is_zero()) record(cand);
            }
        }
    }

    // multiplicities in the original polynomial
    CycPoly rem = poly;
    for (auto& f : found) {
        CycPoly lin(std::vector<Cyclotomic>{-f.first, Cyclotomic(1)});
        for (;;) {
            CycPoly q, r;
            CycPoly::divmod(rem, lin, q, r);
            if (!r.is_zero()) break;
            rem = q;
            ++f.second;
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    res.roots = found;
    res.remaining = rem;
    return res;
}

RootSet split_completely(const CycPoly& p, int base_order)
{
    int base = lcm_int(base_order, p.common_order());
    RootSet first = roots_in_field(p, base);
    if (first.count() == p.degree()) return first;
    std::vector<int> cands;
    for (int m = 2; m <= 60; ++m) {
        int M = lcm_int(base, m);
        if (M == base || euler_phi(M) > 8) continue;
        if (std::find(cands.begin(), cands.end(), M) == cands.end()) cands.push_back(M);
    }
    std::sort(cands.begin(), cands.end(), [](int a, int b) {
        int pa = euler_phi(a), pb = euler_phi(b);
        return pa != pb ? pa < pb : a < b;
    });
    // only extend by what the leftover factor needs: try the smallest fields first
    for (int M : cands) {
        RootSet r = roots_in_field(first.remaining, M);
        if (r.count() == first.remaining.degree()) {
            RootSet out;
            out.order = M;
            out.roots = first.roots;
            for (const auto& x : r.roots) out.roots.push_back(x);
            std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            out.remaining = CycPoly(Cyclotomic(1));
            return out;
        }
    }
    fail(ErrorKind::UnsupportedAlgebraicExtension,
         "factor " + first.remaining.to_string("X") + " has roots outside every cyclotomic field of degree <= 8");
}

}  // namespace wildcycle

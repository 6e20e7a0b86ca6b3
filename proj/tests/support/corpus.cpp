#include "corpus.hpp"

#include "wildcycle/series_matrix.hpp"

#include <numeric>

namespace wctest {

ExpFactor phi1(std::map<int, Cyclotomic> c) { return ExpFactor(1, std::move(c)); }
ExpFactor phiq(int q, std::map<int, Cyclotomic> c) { return ExpFactor(q, std::move(c)); }

std::string phi_key(const ExpFactor& phi)
{
    ExpFactor r = phi.reduced();
    return r.is_zero() ? "0" : r.to_string() + "@" + std::to_string(r.q());
}

ScalarMat regular_residue(const std::vector<ComplexExponent>& betas, bool jordan)
{
    int n = static_cast<int>(betas.size());
    ScalarMat r(n, n, ParamScalar(0));
    for (int i = 0; i < n; ++i) r(i, i) = star(betas[i]);
    if (jordan)
        for (int i = 1; i < n; ++i)
            if (betas[i] == betas[i - 1]) r(i, i - 1) = ParamScalar(1);
    return r;
}

LambdaConnection elementary_block(const BlockSpec& b)
{
    int q = b.phi.q();
    int n = static_cast<int>(b.betas.size());
    LaurentMatrix a = smat_from_constant(regular_residue(b.betas, b.jordan), q);
    if (!b.phi.is_zero()) {
        Series th = b.phi.theta_series();
        for (int i = 0; i < n; ++i) a(i, i) += th;
    }
    LambdaConnection m(q, a);
    return q > 1 ? pushforward(m, q) : m;
}

namespace {

Series random_entry(std::mt19937& rng, const GaugeOptions& opt, int min_degree)
{
    std::uniform_int_distribution<int> coef(-2, 2), pct(0, 99);
    Series s(1);
    for (int k = min_degree; k <= opt.degree; ++k) {
        if (pct(rng) >= opt.fill_percent) continue;
        int c = coef(rng);
        if (c == 0) continue;
        ParamScalar v(c);
        if (opt.lambda_entries && pct(rng) < 30) v = v * ParamScalar::lambda();
        s += Series::monomial(v, k, 1);
    }
    return s;
}

// inverse of I + N for N nilpotent
LaurentMatrix unipotent_inverse(const LaurentMatrix& u)
{
    int n = u.rows();
    LaurentMatrix nn = u - smat_identity(n, 1);
    LaurentMatrix acc = smat_identity(n, 1), p = smat_identity(n, 1);
    for (int k = 1; k < n; ++k) {
        p = p * nn;
        LaurentMatrix term = p;
        if (k % 2 == 1) term = term.map([](const Series& s) { return -s; });
        acc += term;
    }
    return acc;
}

}  // namespace

std::pair<LaurentMatrix, LaurentMatrix> random_gauge(int n, std::mt19937& rng, const GaugeOptions& opt)
{
    LaurentMatrix lo = smat_identity(n, 1), up = smat_identity(n, 1), d = smat_identity(n, 1), dinv = smat_identity(n, 1);
    std::uniform_int_distribution<int> diag(1, 3), sgn(0, 1);
    for (int i = 0; i < n; ++i) {
        int v = diag(rng) * (sgn(rng) ? -1 : 1);
        d(i, i) = Series::constant(ParamScalar(v), 1);
        dinv(i, i) = Series::constant(ParamScalar(1) / ParamScalar(v), 1);
        for (int j = 0; j < i; ++j) {
            lo(i, j) = random_entry(rng, opt, 0);
            up(j, i) = random_entry(rng, opt, 0);
        }
    }
    LaurentMatrix g = d * lo * up;
    LaurentMatrix ginv = unipotent_inverse(up) * unipotent_inverse(lo) * dinv;
    return {g, ginv};
}

LambdaConnection apply_gauge(const LambdaConnection& m, const LaurentMatrix& g, const LaurentMatrix& ginv)
{
    ParamScalar lam = m.lambda_scalar();
    LaurentMatrix gq = smat_with_q(g, m.q), giq = smat_with_q(ginv, m.q);
    LaurentMatrix th = smat_theta(gq).map([&](const Series& s) { return s.scaled(lam); });
    return LambdaConnection(m.q, giq * (m.A * gq + th), m.lambda0);
}

CorpusCase make_case(const std::string& name, const std::vector<BlockSpec>& blocks, std::mt19937& rng, const GaugeOptions& opt)
{
    CorpusCase c;
    c.name = name;
    c.blocks = blocks;
    bool first = true;
    for (const auto& b : blocks) {
        LambdaConnection e = elementary_block(b);
        c.model = first ? e : direct_sum(c.model, e);
        first = false;
        int q = b.phi.q();
        int r = static_cast<int>(b.betas.size());
        for (int j = 0; j < q; ++j) c.expected_phis[phi_key(b.phi.rotated(j))] += r;
        if (b.phi.is_zero()) c.zero_phi_rank += r;
        c.expected_q = std::lcm(c.expected_q, b.phi.reduced().q());
    }
    auto [g, gi] = random_gauge(c.model.rank(), rng, opt);
    c.input = apply_gauge(c.model, g, gi);
    return c;
}

namespace {

using CE = ComplexExponent;

CE be(long a, long b, long c = 0, long d = 1) { return CE(mpq_class(a, b), mpq_class(c, d)); }

Cyclotomic cq(long a, long b = 1) { return Cyclotomic(mpq_class(a, b)); }

}  // namespace

std::vector<CorpusCase> decomposition_corpus()
{
    std::mt19937 rng(20240611);
    GaugeOptions g;
    GaugeOptions gl = g;
    gl.lambda_entries = true;
    std::vector<CorpusCase> out;
    auto add = [&](const std::string& n, std::vector<BlockSpec> b, const GaugeOptions& o) { out.push_back(make_case(n, b, rng, o)); };

    ExpFactor zero(1);
    add("two-exponentials", {{phi1({{-1, cq(1)}}), {be(0, 1)}}, {phi1({{-1, cq(-1)}}), {be(-1, 2)}}}, g);
    add("regular-pair", {{zero, {be(-1, 3), be(1, 4)}}}, g);
    add("regular-jordan", {{zero, {be(-1, 2, 1), be(-1, 2, 1)}, true}}, g);
    add("pole2-and-regular", {{phi1({{-2, cq(1)}}), {be(0, 1)}}, {zero, {be(1, 3)}}}, g);
    add("pole2-two-terms", {{phi1({{-2, cq(2)}, {-1, cq(1)}}), {be(0, 1)}}, {phi1({{-1, cq(3)}}), {be(-1, 2)}}}, g);
    add("twisted-jordan", {{phi1({{-1, cq(1, 2)}}), {be(0, 1), be(0, 1)}, true}, {zero, {be(0, 1)}}}, g);
    add("ramified-2", {{phiq(2, {{-1, cq(1)}}), {be(0, 1)}}}, g);
    add("ramified-2-pole3", {{phiq(2, {{-3, cq(1)}}), {be(0, 1)}}}, g);
    add("ramified-3", {{phiq(3, {{-1, cq(1)}}), {be(0, 1)}}}, g);
    add("ramified-3-pole2", {{phiq(3, {{-2, cq(2)}}), {be(0, 1)}}}, g);
    add("ramified-2-plus-regular", {{phiq(2, {{-1, cq(1)}}), {be(0, 1)}}, {zero, {be(-1, 4)}}}, g);
    add("ramified-2-plus-exponential", {{phiq(2, {{-1, cq(1)}}), {be(0, 1)}}, {phi1({{-1, cq(2)}}), {be(0, 1)}}}, g);
    add("ramified-4", {{phiq(4, {{-1, cq(1)}}), {be(0, 1)}}}, g);
    add("ramified-2-complex-exponent", {{phiq(2, {{-1, cq(3)}}), {be(-1, 3, 1, 2)}}}, g);
    add("three-exponentials", {{phi1({{-1, cq(1)}}), {be(0, 1)}}, {phi1({{-1, cq(-1)}}), {be(0, 1)}}, {phi1({{-1, cq(2)}}), {be(-1, 2)}}}, g);
    add("rank5-mixed", {{phi1({{-1, cq(1)}}), {be(0, 1), be(0, 1)}, true}, {zero, {be(-1, 2), be(1, 3)}}, {phi1({{-1, cq(-2)}}), {be(0, 1)}}}, g);
    add("rank5-ramified", {{phiq(2, {{-1, cq(1)}}), {be(0, 1)}}, {phiq(2, {{-1, cq(2)}}), {be(0, 1)}}, {zero, {be(-1, 2)}}}, g);
    add("gaussian-factor", {{phi1({{-1, Cyclotomic::gaussian(1, 1)}}), {be(0, 1)}}, {phi1({{-1, Cyclotomic::gaussian(0, -1)}}), {be(0, 1)}}}, g);
    add("lambda-gauge-exponentials", {{phi1({{-1, cq(1)}}), {be(0, 1)}}, {phi1({{-1, cq(-1)}}), {be(1, 2)}}}, gl);
    add("lambda-gauge-regular", {{zero, {be(-1, 3), be(-1, 3)}, true}}, gl);
    add("lambda-gauge-ramified", {{phiq(2, {{-1, cq(1)}}), {be(0, 1)}}}, gl);
    add("regular-rank4", {{zero, {be(0, 1), be(0, 1), be(0, 1)}, true}, {zero, {be(-1, 5, 2, 1)}}}, g);
    add("jordan-rank3-twisted", {{phi1({{-2, cq(1)}}), {be(-1, 2), be(-1, 2), be(-1, 2)}, true}}, g);
    add("pole3-pair", {{phi1({{-3, cq(1)}, {-1, cq(1)}}), {be(0, 1)}}, {phi1({{-3, cq(1)}}), {be(0, 1)}}}, g);
    return out;
}

std::vector<CorpusCase> regularity_corpus()
{
    std::mt19937 rng(7);
    GaugeOptions g;
    std::vector<CorpusCase> out;
    auto add = [&](const std::string& n, std::vector<BlockSpec> b) { out.push_back(make_case(n, b, rng, g)); };
    ExpFactor zero(1);
    // regular
    for (int k = 0; k < 12; ++k) {
        std::vector<ComplexExponent> bs;
        int n = 1 + k % 4;
        for (int i = 0; i < n; ++i) bs.push_back(be((k + 2 * i) % 5 - 2, 3, (k * i) % 3 - 1, 2));
        add("regular-" + std::to_string(k), {{zero, bs, k % 3 == 0}});
    }
    // twisted regular: E^{phi/lambda} (x) R with phi unramified
    for (int k = 0; k < 10; ++k) {
        int pole = 1 + k % 3;
        std::vector<ComplexExponent> bs;
        for (int i = 0; i <= k % 2; ++i) bs.push_back(be(-(i + k % 3), 4));
        add("twisted-" + std::to_string(k), {{phi1({{-pole, cq(k + 1, 2)}}), bs}, {zero, {be(0, 1)}}});
    }
    // ramified irregular
    for (int k = 0; k < 10; ++k) {
        int q = 2 + k % 3;
        int pole = 1 + (k / 3) % 2;
        if (std::gcd(q, pole) != 1) pole = 1;
        std::vector<BlockSpec> b = {{phiq(q, {{-pole, cq(k % 2 ? -1 : 1)}}), {be(0, 1)}}};
        if (q == 2 && k % 2 == 0) b.push_back({zero, {be(-1, 3)}});
        add("ramified-" + std::to_string(k), b);
    }
    return out;
}

}  // namespace wctest

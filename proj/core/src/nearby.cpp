#include "wildcycle/nearby.hpp"

#include "wildcycle/errors.hpp"

#include <algorithm>

namespace wildcycle {

int DeligneTable::total_dim() const
{
    int n = 0;
    for (const auto& e : entries) n += e.datum.dim * e.orbit_size;
    return n;
}

bool entry_less(const DeligneEntry& a, const DeligneEntry& b)
{
    if (a.datum.phi != b.datum.phi) return exp_factor_less(a.datum.phi, b.datum.phi);
    return a.datum.beta < b.datum.beta;
}

namespace {

void fill_weights(DeligneEntry& e)
{
    e.jordan_sizes.clear();
    e.datum.weight_dims.clear();
    e.datum.primitive_dims.clear();
    if (e.datum.dim == 0) return;
    auto f = monodromy_filtration(e.datum.N);
    e.datum.weight_dims = f.weight_dims;
    e.datum.primitive_dims = f.primitive_dims;
    e.jordan_sizes = f.sizes;
}

ScalarMat block_sum(const ScalarMat& a, const ScalarMat& b)
{
    ScalarMat r(a.rows() + b.rows(), a.cols() + b.cols(), ParamScalar(0));
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

// entries with equal keys are direct summands of one space
std::vector<DeligneEntry> merge_equal(std::vector<DeligneEntry> es)
{
    std::stable_sort(es.begin(), es.end(), entry_less);
    std::vector<DeligneEntry> out;
    for (auto& e : es) {
        if (!out.empty() && out.back().datum.phi == e.datum.phi && out.back().datum.beta == e.datum.beta &&
            out.back().orbit_size == e.orbit_size) {
            DeligneEntry& l = out.back();
            l.datum.N = block_sum(l.datum.N, e.datum.N);
            l.datum.dim += e.datum.dim;
            if (l.summand != e.summand) l.summand = -1;
            fill_weights(l);
        } else {
            out.push_back(std::move(e));
        }
    }
    return out;
}

}  // namespace

DeligneTable deligne_from_decomposition(const FormalDecomposition& d)
{
    DeligneTable t;
    t.q_used = d.q_used;
    t.input_q = d.input_q;
    t.lambda0 = d.lambda0;
    std::vector<DeligneEntry> es;
    for (size_t s = 0; s < d.summands.size(); ++s) {
        const Summand& sm = d.summands[s];
        // the twist by E^{-phi/lambda} leaves exactly the regular part
        ReductionResult rr = reduce_to_constant(sm.regular);
        for (const auto& b : normalized_exponents(rr.model)) {
            DeligneEntry e;
            e.datum = psi_beta(rr.model, b);
            e.datum.phi = sm.phi.reduced();
            e.summand = static_cast<int>(s);
            fill_weights(e);
            es.push_back(std::move(e));
        }
    }
    t.entries = merge_equal(std::move(es));
    return t;
}

DeligneTable deligne_nearby_cycles(const LambdaConnection& m, const DecompOptions& opt)
{
    if (m.is_higgs()) fail(ErrorKind::InvalidArgument, "nearby cycles are computed for lambda != 0");
    return deligne_from_decomposition(formal_decompose(m, opt));
}

DeligneTable ramification_transport(const DeligneTable& t, int r)
{
    if (r < 1) fail(ErrorKind::InvalidArgument, "ramification factor must be positive");
    DeligneTable out;
    out.lambda0 = t.lambda0;
    out.folded = t.folded;
    // the pulled-back module lives in t_{rq}; its working coordinate is the lcm with t_Q
    out.input_q = t.input_q * r;
    out.q_used = lcm_int(out.input_q, t.q_used);
    int factor = out.q_used / t.q_used;
    std::vector<DeligneEntry> es;
    for (const auto& e : t.entries) {
        DeligneEntry n = e;
        n.summand = -1;
        n.datum.beta = e.datum.beta.scaled(factor).normalized();
        n.datum.N = e.datum.N.scaled(ParamScalar(factor));
        fill_weights(n);
        es.push_back(std::move(n));
    }
    out.entries = merge_equal(std::move(es));
    return out;
}

ExpFactor orbit_representative(const ExpFactor& phi)
{
    ExpFactor best = phi;
    for (int j = 1; j < phi.q(); ++j) {
        ExpFactor r = phi.rotated(j);
        if (exp_factor_less(r, best)) best = r;
    }
    return best;
}

DeligneTable fold_galois(const DeligneTable& t)
{
    if (t.folded) return t;
    DeligneTable out = t;
    out.folded = true;
    std::vector<DeligneEntry> es;
    for (const auto& e : t.entries) {
        DeligneEntry n = e;
        n.datum.phi = orbit_representative(e.datum.phi);
        es.push_back(std::move(n));
    }
    std::stable_sort(es.begin(), es.end(), entry_less);
    // conjugate keys carry isomorphic data; count them instead of summing
    std::vector<DeligneEntry> folded;
    for (auto& e : es) {
        if (!folded.empty() && folded.back().datum.phi == e.datum.phi && folded.back().datum.beta == e.datum.beta &&
            folded.back().jordan_sizes == e.jordan_sizes) {
            folded.back().orbit_size += e.orbit_size;
            folded.back().summand = -1;
        } else {
            folded.push_back(std::move(e));
        }
    }
    out.entries = std::move(folded);
    return out;
}

}  // namespace wildcycle

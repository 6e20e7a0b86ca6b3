#pragma once

#include "wildcycle/errors.hpp"
#include "wildcycle/linalg.hpp"

#include <map>
#include <vector>

namespace wildcycle {

// Jordan chains of a nilpotent endomorphism. Columns of `basis` list each chain
// as v, Nv, N^2 v, ... so N is lower triangular (ones below the diagonal) there.
template <class F>
struct JordanData {
    Mat<F> basis;
    std::vector<int> sizes;  // chain lengths, non-increasing
};

template <class F>
int nilpotency_index(const Mat<F>& n)
{
    int d = n.rows();
    Mat<F> p = Mat<F>::identity(d, F(1), F(0));
    for (int k = 0; k <= d; ++k) {
        if (is_zero_matrix(p)) return k;
        p = p * n;
    }
    fail(ErrorKind::NotNilpotent, "matrix is not nilpotent");
}

template <class F>
JordanData<F> jordan_chains(const Mat<F>& n)
{
    int d = n.rows();
    int m = nilpotency_index(n);
    std::vector<Mat<F>> ker(m + 1);
    Mat<F> p = Mat<F>::identity(d, F(1), F(0));
    ker[0] = Mat<F>(d, 0);
    for (int s = 1; s <= m; ++s) {
        p = p * n;
        ker[s] = kernel_basis(p);
    }
    std::vector<std::pair<int, Mat<F>>> tops;
    for (int s = m; s >= 1; --s) {
        Mat<F> w = ker[s - 1];
        for (const auto& [len, v] : tops) w = hstack(w, mat_pow(n, len - s) * v);
        int r = w.cols() == 0 ? 0 : rank_of(w);
        for (int j = 0; j < ker[s].cols(); ++j) {
            Mat<F> cand = hstack(w, ker[s].column(j));
            int rc = rank_of(cand);
            if (rc > r) {
                w = cand;
                r = rc;
                tops.emplace_back(s, ker[s].column(j));
            }
        }
    }
    JordanData<F> out;
    out.basis = Mat<F>(d, 0);
    for (const auto& [len, v] : tops) {
        Mat<F> x = v;
        for (int k = 0; k < len; ++k) {
            out.basis = hstack(out.basis, x);
            x = n * x;
        }
        out.sizes.push_back(len);
    }
    return out;
}

// Weight filtration of a nilpotent N centred at 0.
template <class F>
struct MonodromyFiltration {
    std::map<int, int> weight_dims;
    std::map<int, int> primitive_dims;
    Mat<F> basis;              // adapted basis (Jordan chains)
    std::vector<int> weights;  // weight of each basis column
    std::vector<int> sizes;

    // M_k spanned by basis columns of weight <= k
    Mat<F> step(int k) const
    {
        Mat<F> out(basis.rows(), 0);
        for (int j = 0; j < basis.cols(); ++j)
            if (weights[j] <= k) out = hstack(out, basis.column(j));
        return out;
    }
};

template <class F>
MonodromyFiltration<F> monodromy_filtration(const Mat<F>& n)
{
    JordanData<F> jd = jordan_chains(n);
    MonodromyFiltration<F> f;
    f.basis = jd.basis;
    f.sizes = jd.sizes;
    for (int len : jd.sizes) {
        for (int k = 0; k < len; ++k) {
            int w = len - 1 - 2 * k;
            f.weights.push_back(w);
            f.weight_dims[w] += 1;
        }
        f.primitive_dims[len - 1] += 1;
    }
    return f;
}

}  // namespace wildcycle

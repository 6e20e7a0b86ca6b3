#pragma once

// Exact linear algebra over a field F (Cyclotomic or ParamScalar).

#include "wildcycle/matrix.hpp"

#include <vector>

namespace wildcycle {

template <class F>
bool is_zero_matrix(const Mat<F>& m)
{
    for (const auto& x : m.data())
        if (!x.is_zero()) return false;
    return true;
}

// reduced row echelon form in place; returns pivot columns
template <class F>
std::vector<int> rref(Mat<F>& m)
{
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero()) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        F inv = m(r, c).inverse();
        for (int j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            F f = m(i, c);
            for (int j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class F>
int rank_of(Mat<F> m)
{
    return static_cast<int>(rref(m).size());
}

// columns form a basis of the kernel
template <class F>
Mat<F> kernel_basis(const Mat<F>& a)
{
    Mat<F> m = a;
    std::vector<int> piv = rref(m);
    std::vector<bool> is_piv(a.cols(), false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < a.cols(); ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    Mat<F> k(a.cols(), static_cast<int>(free_cols.size()), F(0));
    for (size_t f = 0; f < free_cols.size(); ++f) {
        int fc = free_cols[f];
        k(fc, static_cast<int>(f)) = F(1);
        for (size_t r = 0; r < piv.size(); ++r) k(piv[r], static_cast<int>(f)) = -m(static_cast<int>(r), fc);
    }
    return k;
}

// a maximal independent subset of the columns
template <class F>
Mat<F> column_basis(const Mat<F>& a)
{
    Mat<F> m = a;
    std::vector<int> piv = rref(m);
    Mat<F> out(a.rows(), static_cast<int>(piv.size()));
    for (size_t k = 0; k < piv.size(); ++k)
        for (int i = 0; i < a.rows(); ++i) out(i, static_cast<int>(k)) = a(i, piv[k]);
    return out;
}

// columns of `more` appended to `base` whenever they raise the rank
template <class F>
Mat<F> extend_basis(const Mat<F>& base, const Mat<F>& more)
{
    Mat<F> cur = base;
    int r = base.cols() == 0 ? 0 : rank_of(base);
    for (int j = 0; j < more.cols(); ++j) {
        Mat<F> cand = hstack(cur, more.column(j));
        int rc = rank_of(cand);
        if (rc > r) {
            cur = cand;
            r = rc;
        }
    }
    return cur;
}

template <class F>
Mat<F> inverse_of(const Mat<F>& a)
{
    int n = a.rows();
    Mat<F> m(n, 2 * n, F(0));
    m.set_block(0, 0, a);
    for (int i = 0; i < n; ++i) m(i, n + i) = F(1);
    std::vector<int> piv = rref(m);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] >= n) fail(ErrorKind::SingularGauge, "matrix is not invertible");
    return m.block(0, n, n, n);
}

// solve a X = b for square invertible a
template <class F>
Mat<F> solve(const Mat<F>& a, const Mat<F>& b)
{
    int n = a.rows();
    Mat<F> m = hstack(a, b);
    std::vector<int> piv = rref(m);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] >= n) fail(ErrorKind::SingularGauge, "singular linear system");
    return m.block(0, n, n, b.cols());
}

// coordinates of the columns of b in the column span of a; false if not in the span
template <class F>
bool solve_in_span(const Mat<F>& a, const Mat<F>& b, Mat<F>& x)
{
    Mat<F> m = hstack(a, b);
    std::vector<int> piv = rref(m);
    x = Mat<F>(a.cols(), b.cols(), F(0));
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] >= a.cols()) return false;
        for (int j = 0; j < b.cols(); ++j) x(piv[r], j) = m(static_cast<int>(r), a.cols() + j);
    }
    return true;
}

template <class F>
F scale_inv(const F& x, long k)
{
    return x / F(k);
}

// monic characteristic polynomial det(X - a), constant term first (Faddeev-LeVerrier)
template <class T>
std::vector<T> char_poly(const Mat<T>& a, const T& one)
{
    int n = a.rows();
    std::vector<T> c(n + 1);
    c[n] = one;
    Mat<T> mk(n, n);
    for (int k = 1; k <= n; ++k) {
        Mat<T> next = a * mk;
        for (int i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        Mat<T> amk = a * mk;
        T tr;
        for (int i = 0; i < n; ++i) tr += amk(i, i);
        c[n - k] = -scale_inv(tr, k);
    }
    return c;
}

template <class F>
Mat<F> mat_pow(const Mat<F>& a, int e)
{
    Mat<F> r = Mat<F>::identity(a.rows(), F(1), F(0));
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

// Kronecker-form solver for L X - X R = C, prepared once
template <class F>
class SylvesterSolver {
public:
    SylvesterSolver(const Mat<F>& L, const Mat<F>& R, const F& shift = F(0)) : n1_(L.rows()), n2_(R.rows())
    {
        // unknown index: i + n1*j for X(i,j); operator X -> L X - X R + shift X
        int n = n1_ * n2_;
        Mat<F> k(n, n, F(0));
        for (int i = 0; i < n1_; ++i)
            for (int j = 0; j < n2_; ++j) {
                int row = i + n1_ * j;
                for (int m = 0; m < n1_; ++m)
                    if (!L(i, m).is_zero()) k(row, m + n1_ * j) += L(i, m);
                for (int m = 0; m < n2_; ++m)
                    if (!R(m, j).is_zero()) k(row, i + n1_ * m) -= R(m, j);
                if (!shift.is_zero()) k(row, row) += shift;
            }
        kinv_ = inverse_of(k);
    }
    Mat<F> solve(const Mat<F>& c) const
    {
        int n = n1_ * n2_;
        Mat<F> x(n1_, n2_, F(0));
        for (int r = 0; r < n; ++r) {
            F s(0);
            for (int col = 0; col < n; ++col) {
                const F& kv = kinv_(r, col);
                const F& cv = c(col % n1_, col / n1_);
                if (kv.is_zero() || cv.is_zero()) continue;
                s += kv * cv;
            }
            x(r % n1_, r / n1_) = s;
        }
        return x;
    }

private:
    int n1_, n2_;
    Mat<F> kinv_;
};

}  // namespace wildcycle

#pragma once

#include "wildcycle/errors.hpp"

#include <vector>

namespace wildcycle {

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, const T& fill = T()) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n, const T& one, const T& zero = T())
    {
        Mat m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }
    const std::vector<T>& data() const { return a_; }

    Mat block(int i0, int j0, int nr, int nc) const
    {
        Mat m(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }
    void set_block(int i0, int j0, const Mat& b)
    {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }
    Mat column(int j) const { return block(0, j, r_, 1); }
    Mat transposed() const
    {
        Mat m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    template <class F>
    auto map(F f) const -> Mat<decltype(f(std::declval<T>()))>
    {
        Mat<decltype(f(std::declval<T>()))> m(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

    Mat& operator+=(const Mat& o)
    {
        check_internal(r_ == o.r_ && c_ == o.c_, "matrix shape mismatch");
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o)
    {
        check_internal(r_ == o.r_ && c_ == o.c_, "matrix shape mismatch");
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    Mat operator-() const
    {
        Mat m = *this;
        for (auto& x : m.a_) x = -x;
        return m;
    }
    friend Mat operator*(const Mat& a, const Mat& b)
    {
        check_internal(a.c_ == b.r_, "matrix product shape mismatch");
        Mat m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (is_zero_entry(x)) continue;
                for (int j = 0; j < b.c_; ++j) {
                    const T& y = b(k, j);
                    if (is_zero_entry(y)) continue;
                    m(i, j) += x * y;
                }
            }
        return m;
    }
    friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    template <class S>
    Mat scaled(const S& s) const
    {
        Mat m = *this;
        for (auto& x : m.a_) x = x * s;
        return m;
    }

    static bool is_zero_entry(const T& x)
    {
        if constexpr (requires { x.is_exact_zero(); })
            return x.is_exact_zero();
        else
            return x.is_zero();
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

template <class T>
Mat<T> hstack(const Mat<T>& a, const Mat<T>& b)
{
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    check_internal(a.rows() == b.rows(), "hstack shape mismatch");
    Mat<T> m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <class T>
Mat<T> block_diag(const Mat<T>& a, const Mat<T>& b)
{
    Mat<T> m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

}  // namespace wildcycle

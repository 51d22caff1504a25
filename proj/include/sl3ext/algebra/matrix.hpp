#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sl3ext {

/// Dense row-major matrix over a commutative ring T (Rational, Q10, MultiPoly, ...).
template <class T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            for (auto& x : row) data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix column(const std::vector<T>& v) {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }
    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t nrows) {
        Matrix m(nrows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t ncols) {
        Matrix m(rows.size(), ncols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < ncols; ++j) m(i, j) = rows[i][j];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<T> row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
    /// Row-major flattening (entry (i,j) at i*cols+j).
    const std::vector<T>& flat() const { return data_; }

    bool is_zero() const {
        for (auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    T trace() const {
        T s(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        Matrix m(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
        return m;
    }

    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
        Matrix<decltype(f(std::declval<const T&>()))> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    template <class S>
    Matrix& scale(const S& s) {
        for (auto& x : data_) x = x * s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x = s * x;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix: shape mismatch in apply");
        std::vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
        return r;
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b - b * a;
}

/// Apply a matrix with scalar entries S to a vector with entries T (T must accept S*T).
template <class S, class T>
std::vector<T> apply_mixed(const Matrix<S>& m, const std::vector<T>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("apply_mixed: shape mismatch");
    std::vector<T> r(m.rows(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && !v[j].is_zero()) r[i] += T(m(i, j)) * v[j];
    return r;
}

/// Lift entries to a bigger ring.
template <class T, class S>
Matrix<T> lift(const Matrix<S>& m) {
    return m.map([](const S& x) { return T(x); });
}

}  // namespace sl3ext

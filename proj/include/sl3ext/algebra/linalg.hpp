#pragma once

#include "sl3ext/algebra/matrix.hpp"
#include "sl3ext/algebra/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace sl3ext {

template <class F>
struct Echelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination over a field.
template <class F>
Echelon<F> rref(Matrix<F> m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        F inv = F(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            F f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(piv)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).pivots.size();
}

/// Basis of the null space; one vector per free column.
template <class F>
std::vector<std::vector<F>> kernel(const Matrix<F>& m) {
    auto e = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : e.pivots) is_piv[p] = true;
    std::vector<std::vector<F>> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<F> v(m.cols(), F(0));
        v[f] = F(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        out.push_back(std::move(v));
    }
    return out;
}

/// Some solution of A x = b, or nullopt when inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b) {
    Matrix<F> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto e = rref(aug);
    std::vector<F> x(a.cols(), F(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == a.cols()) return std::nullopt;
        x[e.pivots[i]] = e.reduced(i, a.cols());
    }
    return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: non-square");
    std::size_t n = m.rows();
    Matrix<F> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = F(1);
    }
    auto e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix<F> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

/// Characteristic polynomial det(tI - M), coefficients low to high (monic).
/// Faddeev-LeVerrier; valid in characteristic zero.
template <class F>
std::vector<F> char_poly_coeffs(const Matrix<F>& a) {
    if (!a.is_square()) throw std::invalid_argument("char_poly: non-square");
    std::size_t n = a.rows();
    std::vector<F> c(n + 1, F(0));
    c[n] = F(1);
    Matrix<F> mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = a * mk;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
        F tr = (a * mk).trace();
        c[n - k] = -tr / F(static_cast<long>(k));
    }
    return c;
}

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    int rank() const { return positive + negative; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric rational matrix by symmetric (congruence) elimination.
inline Signature signature(Matrix<Rational> s) {
    if (!s.is_square()) throw std::invalid_argument("signature: non-square");
    std::size_t n = s.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (s(i, j) != s(j, i)) throw std::invalid_argument("signature: matrix not symmetric");
    Signature sig;
    std::vector<bool> done(n, false);
    auto add_row_col = [&](std::size_t dst, std::size_t src, const Rational& f) {
        for (std::size_t j = 0; j < n; ++j) s(dst, j) += f * s(src, j);
        for (std::size_t i = 0; i < n; ++i) s(i, dst) += f * s(i, src);
    };
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && !s(i, i).is_zero()) { p = i; break; }
        if (p == n) {
            // all remaining diagonal entries vanish: create one from an off-diagonal pair
            bool found = false;
            for (std::size_t i = 0; i < n && !found; ++i) {
                if (done[i]) continue;
                for (std::size_t j = 0; j < n && !found; ++j) {
                    if (done[j] || i == j || s(i, j).is_zero()) continue;
                    add_row_col(i, j, Rational(1));
                    found = true;
                    p = i;
                }
            }
            if (!found) break;
        }
        Rational d = s(p, p);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == p || done[i] || s(i, p).is_zero()) continue;
            Rational f = -s(i, p) / d;
            add_row_col(i, p, f);
        }
        done[p] = true;
        (d.sign() > 0 ? sig.positive : sig.negative)++;
    }
    sig.zero = static_cast<int>(n) - sig.rank();
    return sig;
}

/// Dimension of the span of a family of vectors.
template <class F>
std::size_t span_dim(const std::vector<std::vector<F>>& vs) {
    if (vs.empty()) return 0;
    return rank(Matrix<F>::from_rows(vs, vs.front().size()));
}

template <class F>
bool in_span(const std::vector<std::vector<F>>& basis, const std::vector<F>& v) {
    if (basis.empty()) {
        for (auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }
    auto m = Matrix<F>::from_columns(basis, v.size());
    return solve(m, v).has_value();
}

/// Coordinates with respect to a fixed linearly independent family of vectors.
/// Uses a pivot-row subsystem for speed and checks the full system on every call.
template <class F>
class SubspaceCoords {
public:
    SubspaceCoords() = default;
    explicit SubspaceCoords(const std::vector<std::vector<F>>& basis) : n_(basis.size()) {
        if (basis.empty()) return;
        ambient_ = basis.front().size();
        b_ = Matrix<F>::from_columns(basis, ambient_);
        auto e = rref(b_.transpose());
        if (e.pivots.size() != n_) throw std::invalid_argument("SubspaceCoords: basis is not independent");
        rows_ = e.pivots;
        auto inv = inverse(b_.submatrix(rows_, all(n_)));
        left_ = *inv;
    }

    std::size_t dim() const { return n_; }
    std::size_t ambient() const { return ambient_; }
    const Matrix<F>& basis_matrix() const { return b_; }

    /// Coordinates of v, or nullopt if v is outside the span. T is F or a ring over F.
    template <class T>
    std::optional<std::vector<T>> coords(const std::vector<T>& v) const {
        if (v.size() != ambient_) throw std::invalid_argument("SubspaceCoords: ambient size mismatch");
        std::vector<T> sub(n_, T(0));
        for (std::size_t i = 0; i < n_; ++i) sub[i] = v[rows_[i]];
        std::vector<T> c = apply_mixed(left_, sub);
        std::vector<T> back = apply_mixed(b_, c);
        for (std::size_t i = 0; i < ambient_; ++i)
            if (!(back[i] - v[i]).is_zero()) return std::nullopt;
        return c;
    }

private:
    static std::vector<std::size_t> all(std::size_t n) {
        std::vector<std::size_t> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = i;
        return r;
    }

    std::size_t n_ = 0;
    std::size_t ambient_ = 0;
    Matrix<F> b_;
    Matrix<F> left_;
    std::vector<std::size_t> rows_;
};

}  // namespace sl3ext

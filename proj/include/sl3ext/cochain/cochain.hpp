#pragma once

#include "sl3ext/algebra/json.hpp"
#include "sl3ext/algebra/linalg.hpp"
#include "sl3ext/sl3/sl3.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl3ext::cochain {

using sl3::Mat;

/// g- = <e0, e1, e2> inside sl(3); index 0,1,2 here.
inline constexpr std::array<std::size_t, 3> kGm{sl3::E0, sl3::E1, sl3::E2};
inline constexpr std::array<int, 3> kGmDeg{-2, -1, -1};
inline constexpr std::array<const char*, 3> kGmName{"e0", "e1", "e2"};

/// Heisenberg bracket [e_i, e_j] in g- coordinates; [e1, e2] = -e0.
inline std::array<int, 3> gm_bracket(std::size_t i, std::size_t j) {
    if (i == 1 && j == 2) return {-1, 0, 0};
    if (i == 2 && j == 1) return {1, 0, 0};
    return {0, 0, 0};
}

/// Ordered basis of Lambda^k (g-)^*, as increasing index tuples.
inline const std::vector<std::vector<std::size_t>>& wedges(int k) {
    static const std::array<std::vector<std::vector<std::size_t>>, 4> w{
        std::vector<std::vector<std::size_t>>{{}},
        std::vector<std::vector<std::size_t>>{{0}, {1}, {2}},
        std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2}, {1, 2}},
        std::vector<std::vector<std::size_t>>{{0, 1, 2}}};
    return w.at(k);
}

inline int wedge_degree(const std::vector<std::size_t>& w) {
    int d = 0;
    for (auto i : w) d -= kGmDeg[i];
    return d;
}

inline std::string wedge_name(const std::vector<std::size_t>& w) {
    std::string s;
    for (auto i : w) s += (s.empty() ? "" : "^") + std::string(kGmName[i]) + "*";
    return s.empty() ? "1" : s;
}

/// A k-cochain stored by its values (8x8 matrices in gl(V)) on the wedge basis.
template <class T>
struct Cochain {
    int k = 1;
    std::vector<Matrix<T>> values;

    static Cochain zero(int k) { return {k, std::vector<Matrix<T>>(wedges(k).size(), Matrix<T>(8, 8))}; }
    bool is_zero() const {
        for (auto& v : values)
            if (!v.is_zero()) return false;
        return true;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) {
        for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
        return a;
    }
    friend Cochain operator-(Cochain a, const Cochain& b) {
        for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] -= b.values[i];
        return a;
    }
    Cochain scaled(const T& s) const {
        Cochain r = *this;
        for (auto& v : r.values) v.scale(s);
        return r;
    }
};

/// Chevalley-Eilenberg differential, g- acting on gl(V) through ad.
template <class T>
Cochain<T> ce_d(const Cochain<T>& c) {
    const auto& g = sl3::algebra();
    std::array<Matrix<T>, 3> rho;
    for (std::size_t i = 0; i < 3; ++i) rho[i] = lift<T>(g.ad(kGm[i]));
    auto br = [&](std::size_t i, const Matrix<T>& m) { return commutator(rho[i], m); };
    switch (c.k) {
        case 0: {
            Cochain<T> out = Cochain<T>::zero(1);
            for (std::size_t i = 0; i < 3; ++i) out.values[i] = br(i, c.values[0]);
            return out;
        }
        case 1: {
            Cochain<T> out = Cochain<T>::zero(2);
            const auto& w2 = wedges(2);
            for (std::size_t a = 0; a < 3; ++a) {
                std::size_t i = w2[a][0], j = w2[a][1];
                Matrix<T> v = br(i, c.values[j]) - br(j, c.values[i]);
                auto b = gm_bracket(i, j);
                for (std::size_t t = 0; t < 3; ++t)
                    if (b[t] != 0) v -= Matrix<T>(c.values[t]).scale(T(b[t]));
                out.values[a] = std::move(v);
            }
            return out;
        }
        case 2: {
            // brackets inside g- only produce phi(e0, e0) = 0 here
            Cochain<T> out = Cochain<T>::zero(3);
            out.values[0] = br(0, c.values[2]) - br(1, c.values[1]) + br(2, c.values[0]);
            return out;
        }
        default:
            throw std::invalid_argument("ce_d: k must be 0, 1 or 2");
    }
}

/// Natural action of x in g on Hom(g-, gl(V)): (x.phi)(u) = [ad x, phi(u)] - phi([x,u] mod p).
template <class T>
Cochain<T> rho_action(const std::vector<Rational>& x, const Cochain<T>& c) {
    if (c.k != 1) throw std::invalid_argument("rho_action: 1-cochain expected");
    const auto& g = sl3::algebra();
    Matrix<T> adx = lift<T>(g.ad_of(x));
    Cochain<T> out = Cochain<T>::zero(1);
    for (std::size_t i = 0; i < 3; ++i) {
        auto xu = g.bracket(x, sl3::basis_vector(kGm[i]));
        Matrix<T> v = commutator(adx, c.values[i]);
        for (std::size_t t = 0; t < 3; ++t)
            if (!xu[kGm[t]].is_zero()) v -= Matrix<T>(c.values[t]).scale(T(xu[kGm[t]]));
        out.values[i] = std::move(v);
    }
    return out;
}

/// Restriction of rho_action to g0 = span{H1, H2}.
template <class T>
Cochain<T> rho_g0(const std::vector<Rational>& x, const Cochain<T>& c) {
    for (std::size_t i = 0; i < 8; ++i)
        if (i != sl3::H1 && i != sl3::H2 && !x[i].is_zero()) throw std::invalid_argument("rho_g0: x not in g0");
    return rho_action(x, c);
}

// ---------------------------------------------------------------------------

/// A g-submodule W of gl(V) with a homogeneous basis and a positive-definite Gram matrix.
class GModule {
public:
    GModule() = default;
    GModule(std::string name, std::vector<Mat> basis, Mat gram) : name_(std::move(name)), basis_(std::move(basis)), gram_(std::move(gram)) {
        const auto& g = sl3::algebra();
        std::vector<std::vector<Rational>> flat;
        for (auto& b : basis_) {
            auto d = g.degree_of(b);
            if (!d || !d->is_integer()) throw std::invalid_argument("GModule " + name_ + ": basis vector not homogeneous");
            degrees_.push_back(static_cast<int>(d->num().get_si()));
            flat.push_back(b.flat());
        }
        if (!basis_.empty()) coords_ = SubspaceCoords<Rational>(flat);
        auto sig = signature(gram_);
        if (sig.positive != static_cast<int>(basis_.size())) throw std::invalid_argument("GModule " + name_ + ": Gram not positive definite");
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Mat>& basis() const { return basis_; }
    const std::vector<int>& degrees() const { return degrees_; }
    const Mat& gram() const { return gram_; }

    template <class T>
    std::optional<std::vector<T>> coords(const Matrix<T>& m) const {
        if (basis_.empty()) {
            if (m.is_zero()) return std::vector<T>{};
            return std::nullopt;
        }
        return coords_.coords(std::vector<T>(m.flat()));
    }
    template <class T>
    Matrix<T> element(const std::vector<T>& c) const {
        Matrix<T> m(8, 8);
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (!c[k].is_zero()) m += lift<T>(basis_[k]).scale(c[k]);
        return m;
    }

private:
    std::string name_;
    std::vector<Mat> basis_;
    std::vector<int> degrees_;
    Mat gram_;
    SubspaceCoords<Rational> coords_;
};

/// Gram matrix used for the calibrated codifferential on ad(g): identity except the
/// H-block [[2,-1],[-1,2]] (the trace form of H1, H2 as 3x3 matrices).
inline Mat adjoint_gram() {
    Mat g = Mat::identity(8);
    g(sl3::H1, sl3::H1) = Rational(2);
    g(sl3::H2, sl3::H2) = Rational(2);
    g(sl3::H1, sl3::H2) = Rational(-1);
    g(sl3::H2, sl3::H1) = Rational(-1);
    return g;
}

inline GModule module_adjoint() {
    const auto& g = sl3::algebra();
    return GModule("ad(g)", std::vector<Mat>(g.ad().begin(), g.ad().end()), adjoint_gram());
}
inline GModule module_R() {
    const auto& g = sl3::algebra();
    std::vector<Mat> b;
    for (auto& l : sl3::kRLabels) b.push_back(g.R(l));
    return GModule("R", b, Mat::identity(b.size()));
}
inline GModule module_S() {
    const auto& g = sl3::algebra();
    std::vector<Mat> b;
    for (auto& l : sl3::kSLabels) b.push_back(g.S(l));
    return GModule("S", b, Mat::identity(b.size()));
}
inline GModule module_so() {
    const auto& g = sl3::algebra();
    Mat gram = Mat::identity(28);
    auto a = adjoint_gram();
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) gram(i, j) = a(i, j);
    return GModule("so(V,kappa)", g.so_basis(), gram);
}
inline GModule module_gminus() {
    const auto& g = sl3::algebra();
    return GModule("g-", {g.ad(sl3::E0), g.ad(sl3::E1), g.ad(sl3::E2)}, Mat::identity(3));
}

/// Homogeneous basis of a span of 8x8 matrices: intersect with each gl_p = {[ad H, M] = p M}.
inline GModule module_from_span(const std::string& name, const std::vector<Mat>& span) {
    const auto& g = sl3::algebra();
    Mat der = sl3::derivation_matrix(g.ad_of(g.grading_element()));
    std::vector<std::vector<Rational>> sp;
    for (auto& m : span) sp.push_back(m.flat());
    std::vector<Mat> basis;
    for (int p = -4; p <= 4; ++p) {
        auto eig = sl3::detail::eigenspace(der, Rational(p));
        for (auto& v : sl3::detail::intersect(sp, eig)) basis.push_back(sl3::detail::unflat64(v));
    }
    if (basis.size() != span_dim(sp)) throw std::logic_error("module_from_span: span is not graded");
    return GModule(name, basis, Mat::identity(basis.size()));
}

// ---------------------------------------------------------------------------

/// C^k(g-, W) for k = 0..3 with D_k : C^k -> C^{k+1} and D*_k = G_k^{-1} D_k^T G_{k+1}.
class Complex {
public:
    explicit Complex(GModule w) : w_(std::move(w)) {
        for (int k = 0; k < 4; ++k) {
            Mat gk(dim(k), dim(k));
            std::size_t n = w_.dim();
            for (std::size_t a = 0; a < wedges(k).size(); ++a)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) gk(a * n + i, a * n + j) = w_.gram()(i, j);
            gram_[k] = gk;
            for (std::size_t a = 0; a < wedges(k).size(); ++a)
                for (std::size_t i = 0; i < n; ++i) deg_[k].push_back(w_.degrees()[i] + wedge_degree(wedges(k)[a]));
        }
        for (int k = 0; k < 3; ++k) {
            Mat d(dim(k + 1), dim(k));
            for (std::size_t col = 0; col < dim(k); ++col) {
                std::vector<Rational> e(dim(k), Rational(0));
                e[col] = Rational(1);
                auto img = to_vector(ce_d(from_vector(k, e)));
                if (!img) throw std::logic_error("Complex: module " + w_.name() + " is not g- invariant");
                for (std::size_t r = 0; r < dim(k + 1); ++r) d(r, col) = (*img)[r];
            }
            d_[k] = d;
            auto ginv = inverse(gram_[k]);
            dstar_[k] = *ginv * d.transpose() * gram_[k + 1];
        }
    }

    const GModule& module() const { return w_; }
    std::size_t dim(int k) const { return wedges(k).size() * w_.dim(); }
    const Mat& D(int k) const { return d_.at(k); }
    const Mat& Dstar(int k) const { return dstar_.at(k); }
    const Mat& gram(int k) const { return gram_.at(k); }
    const std::vector<int>& degrees(int k) const { return deg_.at(k); }

    template <class T>
    std::optional<std::vector<T>> to_vector(const Cochain<T>& c) const {
        std::vector<T> out;
        for (auto& v : c.values) {
            auto x = w_.coords(v);
            if (!x) return std::nullopt;
            out.insert(out.end(), x->begin(), x->end());
        }
        return out;
    }
    template <class T>
    Cochain<T> from_vector(int k, const std::vector<T>& v) const {
        Cochain<T> c = Cochain<T>::zero(k);
        std::size_t n = w_.dim();
        for (std::size_t a = 0; a < wedges(k).size(); ++a)
            c.values[a] = w_.element(std::vector<T>(v.begin() + a * n, v.begin() + (a + 1) * n));
        return c;
    }

    /// Indices of C^k basis elements of degree r.
    std::vector<std::size_t> indices_of_degree(int k, int r) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < deg_[k].size(); ++i)
            if (deg_[k][i] == r) out.push_back(i);
        return out;
    }
    std::vector<int> positive_degrees(int k) const {
        std::vector<int> out;
        for (int d : deg_[k])
            if (d >= 1 && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
        std::sort(out.begin(), out.end());
        return out;
    }

    json export_json() const {
        json out;
        out["module"] = w_.name();
        for (int k = 0; k < 3; ++k) {
            out["D"][std::to_string(k)] = to_json(d_[k]);
            out["Dstar"][std::to_string(k)] = to_json(dstar_[k]);
        }
        return out;
    }

private:
    GModule w_;
    std::array<Mat, 4> gram_;
    std::array<std::vector<int>, 4> deg_;
    std::array<Mat, 3> d_, dstar_;
};

struct HarmonicSpace {
    int k = 1;
    std::string module;
    int degree = 0;
    std::vector<std::vector<Rational>> basis;  // vectors in C^1 coordinates
    std::size_t quotient_dim = 0;              // dim(ker d / im d) in the same bidegree
};

/// ker d  cap ker d*  on C^1(g-, W), degree by degree for positive degrees, with the quotient
/// ker/im computed independently.
inline std::vector<HarmonicSpace> harmonic_h1(const Complex& cx) {
    std::vector<HarmonicSpace> out;
    for (int r : cx.positive_degrees(1)) {
        auto idx = cx.indices_of_degree(1, r);
        const Mat& d1 = cx.D(1);
        const Mat& ds0 = cx.Dstar(0);
        Mat stacked(d1.rows() + ds0.rows(), idx.size());
        Mat d1r(d1.rows(), idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) {
            for (std::size_t i = 0; i < d1.rows(); ++i) stacked(i, c) = d1r(i, c) = d1(i, idx[c]);
            for (std::size_t i = 0; i < ds0.rows(); ++i) stacked(d1.rows() + i, c) = ds0(i, idx[c]);
        }
        HarmonicSpace h;
        h.module = cx.module().name();
        h.degree = r;
        for (auto& v : kernel(stacked)) {
            std::vector<Rational> full(cx.dim(1), Rational(0));
            for (std::size_t c = 0; c < idx.size(); ++c) full[idx[c]] = v[c];
            h.basis.push_back(std::move(full));
        }
        auto idx0 = cx.indices_of_degree(0, r);
        std::size_t im = rank(cx.D(0).submatrix(idx, idx0));
        // columns outside degree r cannot reach degree r, so the restriction is exact
        h.quotient_dim = kernel(d1r).size() - im;
        out.push_back(std::move(h));
    }
    return out;
}

inline std::size_t total_dim(const std::vector<HarmonicSpace>& hs) {
    std::size_t n = 0;
    for (auto& h : hs) n += h.basis.size();
    return n;
}

/// xi_1^R = R_{-1,1} (x) e2^*,  xi_1^S = S_{1,-1} (x) e1^*.
inline Cochain<Rational> xi_R() {
    auto c = Cochain<Rational>::zero(1);
    c.values[2] = sl3::algebra().R({-1, 1});
    return c;
}
inline Cochain<Rational> xi_S() {
    auto c = Cochain<Rational>::zero(1);
    c.values[1] = sl3::algebra().S({1, -1});
    return c;
}

/// Kernel of x -> rho(x) c over g0 = span{H1, H2}, for each cochain jointly.
inline std::vector<std::vector<Rational>> stabilizer_g0(const std::vector<Cochain<Rational>>& cs) {
    std::vector<std::vector<Rational>> cols;
    for (std::size_t h : {std::size_t(sl3::H1), std::size_t(sl3::H2)}) {
        std::vector<Rational> col;
        for (auto& c : cs)
            for (auto& v : rho_g0(sl3::basis_vector(h), c).values) col.insert(col.end(), v.flat().begin(), v.flat().end());
        cols.push_back(std::move(col));
    }
    std::vector<std::vector<Rational>> out;
    for (auto& k : kernel(Mat::from_columns(cols, cols.front().size()))) {
        std::vector<Rational> x(8, Rational(0));
        x[sl3::H1] = k[0];
        x[sl3::H2] = k[1];
        out.push_back(std::move(x));
    }
    return out;
}

/// Scalar s with a = s * b, or nullopt when a is not a multiple of b (b nonzero).
template <class T>
std::optional<T> proportionality(const Cochain<T>& a, const Cochain<T>& b) {
    std::optional<T> s;
    for (std::size_t w = 0; w < a.values.size(); ++w)
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) {
                const T& bv = b.values[w](i, j);
                if (!bv.is_zero() && !s) s = a.values[w](i, j) / bv;
            }
    if (!s) return std::nullopt;
    if (!(a - b.scaled(*s)).is_zero()) return std::nullopt;
    return s;
}

}  // namespace sl3ext::cochain

#pragma once

#include "sl3ext/algebra/json.hpp"
#include "sl3ext/algebra/linalg.hpp"
#include "sl3ext/algebra/matrix.hpp"
#include "sl3ext/algebra/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sl3ext::sl3 {

using Mat = Matrix<Rational>;
using Label = std::pair<int, int>;

/// Positions in the ordered basis (A1..A8) of V = sl(3).
enum Basis : std::size_t { CE0 = 0, CE1 = 1, CE2 = 2, H1 = 3, H2 = 4, E2 = 5, E1 = 6, E0 = 7 };

inline constexpr std::array<int, 8> kDegree{2, 1, 1, 0, 0, -1, -1, -2};
inline constexpr std::array<const char*, 8> kName{"ce0", "ce1", "ce2", "H1", "H2", "e2", "e1", "e0"};
inline constexpr std::array<const char*, 8> kMatrixName{"E13", "E12", "E23", "H1", "H2", "E32", "E21", "E31"};

/// Generation order of the weight vectors (each one is a bracket of an earlier one).
inline const std::vector<Label> kRLabels{{2, 1}, {1, 1}, {1, 0}, {0, 1}, {0, 0}, {0, -1}, {-1, 1}, {-1, 0}, {-1, -1}, {-1, -2}};
inline const std::vector<Label> kSLabels{{1, 2}, {1, 1}, {0, 1}, {1, 0}, {0, 0}, {-1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-2, -1}};

inline std::string label_str(char fam, Label l) {
    return std::string(1, fam) + "(" + std::to_string(l.first) + "," + std::to_string(l.second) + ")";
}

/// Elementary 3x3 matrix E_{ij}, 1-based.
inline Mat elementary3(int i, int j) {
    Mat m(3, 3);
    m(i - 1, j - 1) = Rational(1);
    return m;
}

/// Elementary 8x8 matrix A_i (x) A_j^*, 1-based.
inline Mat unit8(int i, int j) {
    Mat m(8, 8);
    m(i - 1, j - 1) = Rational(1);
    return m;
}

/// sl(3) with its contact grading, the adjoint representation, the Killing form and
/// the ambient so(V, kappa) = ad(g) + R-span + S-span.
class Sl3 {
public:
    static const Sl3& instance() {
        static const Sl3 s;
        return s;
    }

    const std::array<Mat, 8>& matrices3() const { return m3_; }
    const std::array<Mat, 8>& ad() const { return ad_; }
    const Mat& ad(std::size_t i) const { return ad_.at(i); }

    /// Coordinates of a traceless 3x3 matrix in (A1..A8).
    static std::vector<Rational> coords3(const Mat& x) {
        Rational h1 = x(0, 0), h2 = -x(2, 2);
        if (x(1, 1) != h2 - h1) throw std::invalid_argument("coords3: matrix is not traceless");
        return {x(0, 2), x(0, 1), x(1, 2), h1, h2, x(2, 1), x(1, 0), x(2, 0)};
    }

    /// Structure constants: coordinates of [A_i, A_j].
    const std::vector<Rational>& bracket(std::size_t i, std::size_t j) const { return c_[i][j]; }
    std::vector<Rational> bracket(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
        std::vector<Rational> r(8, Rational(0));
        for (std::size_t i = 0; i < 8; ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; j < 8; ++j) {
                if (b[j].is_zero()) continue;
                for (std::size_t k = 0; k < 8; ++k) r[k] += a[i] * b[j] * c_[i][j][k];
            }
        }
        return r;
    }

    /// ad of an element given by coordinates.
    template <class T = Rational>
    Matrix<T> ad_of(const std::vector<T>& x) const {
        Matrix<T> m(8, 8);
        for (std::size_t i = 0; i < 8; ++i)
            if (!x[i].is_zero()) m += lift<T>(ad_[i]).scale(x[i]);
        return m;
    }

    const Mat& killing() const { return kappa_; }

    /// Unique H in span{H1,H2} with [H, A_i] = deg(A_i) A_i; coordinates in (A1..A8).
    const std::vector<Rational>& grading_element() const { return grading_; }
    /// Derivation degree of an 8x8 matrix that is a weight vector: [ad H, M] = deg * M.
    std::optional<Rational> degree_of(const Mat& m) const {
        Mat c = commutator(ad_of(grading_), m);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j)
                if (!m(i, j).is_zero()) {
                    Rational d = c(i, j) / m(i, j);
                    if (c == Mat(m).scale(d)) return d;
                    return std::nullopt;
                }
        return std::nullopt;
    }

    const Mat& R(Label l) const { return r_.at(l); }
    const Mat& S(Label l) const { return s_.at(l); }
    const std::map<Label, Mat>& R_family() const { return r_; }
    const std::map<Label, Mat>& S_family() const { return s_; }

    bool is_in_so(const Mat& m) const { return (m.transpose() * kappa_ + kappa_ * m).is_zero(); }
    template <class T>
    bool is_in_so(const Matrix<T>& m) const {
        auto k = lift<T>(kappa_);
        return (m.transpose() * k + k * m).is_zero();
    }

    /// Ordered basis of so(V, kappa): ad(A1..A8), R (kRLabels order), S (kSLabels order).
    const std::vector<Mat>& so_basis() const { return so_; }
    const std::vector<std::string>& so_names() const { return so_names_; }
    const std::vector<int>& so_degrees() const { return so_deg_; }
    static constexpr std::size_t kSoDim = 28;

    /// Coordinates in so_basis(), or nullopt if m is not in so(V, kappa).
    template <class T>
    std::optional<std::vector<T>> so_coords(const Matrix<T>& m) const {
        return so_coords_.coords(std::vector<T>(m.flat()));
    }
    template <class T>
    Matrix<T> from_so_coords(const std::vector<T>& c) const {
        Matrix<T> m(8, 8);
        for (std::size_t k = 0; k < kSoDim; ++k)
            if (!c[k].is_zero())
                for (std::size_t i = 0; i < 8; ++i)
                    for (std::size_t j = 0; j < 8; ++j)
                        if (!so_[k](i, j).is_zero()) m(i, j) += T(so_[k](i, j)) * c[k];
        return m;
    }

    template <class T>
    struct Projection {
        Matrix<T> g, r, s;
    };
    /// Split into ad(g), R-span and S-span parts. Throws if m is not in so(V, kappa).
    template <class T>
    Projection<T> project(const Matrix<T>& m) const {
        auto c = so_coords(m);
        if (!c) throw std::invalid_argument("project: matrix is not in so(V,kappa)");
        auto part = [&](std::size_t lo, std::size_t hi) {
            std::vector<T> v(kSoDim, T(0));
            for (std::size_t k = lo; k < hi; ++k) v[k] = (*c)[k];
            return from_so_coords(v);
        };
        return {part(0, 8), part(8, 18), part(18, 28)};
    }

    json dump() const {
        json out;
        out["killing"] = to_json(kappa_);
        json basis = json::array();
        for (std::size_t k = 0; k < kSoDim; ++k)
            basis.push_back(json{{"name", so_names_[k]}, {"degree", so_deg_[k]}, {"matrix", to_json(so_[k])}});
        out["so_basis"] = std::move(basis);
        return out;
    }

private:
    Sl3() {
        m3_ = {elementary3(1, 3), elementary3(1, 2), elementary3(2, 3), elementary3(1, 1) - elementary3(2, 2),
               elementary3(2, 2) - elementary3(3, 3), elementary3(3, 2), elementary3(2, 1), elementary3(3, 1)};
        c_.assign(8, std::vector<std::vector<Rational>>(8));
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) c_[i][j] = coords3(commutator(m3_[i], m3_[j]));
        for (std::size_t i = 0; i < 8; ++i) {
            ad_[i] = Mat(8, 8);
            for (std::size_t j = 0; j < 8; ++j)
                for (std::size_t k = 0; k < 8; ++k) ad_[i](k, j) = c_[i][j][k];
        }
        kappa_ = Mat(8, 8);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) kappa_(i, j) = (ad_[i] * ad_[j]).trace();
        solve_grading_element();
        build_star_of_david();
        for (std::size_t i = 0; i < 8; ++i) {
            so_.push_back(ad_[i]);
            so_names_.push_back(std::string("ad ") + kName[i]);
            so_deg_.push_back(kDegree[i]);
        }
        for (auto& l : kRLabels) {
            so_.push_back(r_.at(l));
            so_names_.push_back(label_str('R', l));
            so_deg_.push_back(l.first + l.second);
        }
        for (auto& l : kSLabels) {
            so_.push_back(s_.at(l));
            so_names_.push_back(label_str('S', l));
            so_deg_.push_back(l.first + l.second);
        }
        std::vector<std::vector<Rational>> flat;
        for (auto& b : so_) flat.push_back(b.flat());
        so_coords_ = SubspaceCoords<Rational>(flat);
    }

    void solve_grading_element() {
        // unknowns (a, b) in H = a H1 + b H2; equations [H, A_i] = deg_i A_i for the negative part
        Matrix<Rational> a(24, 2);
        std::vector<Rational> rhs(24, Rational(0));
        std::size_t row = 0;
        for (std::size_t i : {std::size_t(E0), std::size_t(E1), std::size_t(E2)}) {
            for (std::size_t k = 0; k < 8; ++k, ++row) {
                a(row, 0) = c_[H1][i][k];
                a(row, 1) = c_[H2][i][k];
                rhs[row] = k == i ? Rational(kDegree[i]) : Rational(0);
            }
        }
        auto x = sl3ext::solve(a, rhs);
        if (!x) throw std::logic_error("grading element: no solution");
        grading_.assign(8, Rational(0));
        grading_[H1] = (*x)[0];
        grading_[H2] = (*x)[1];
        for (std::size_t i = 0; i < 8; ++i) {
            std::vector<Rational> ai(8, Rational(0));
            ai[i] = Rational(1);
            auto br = bracket(grading_, ai);
            for (std::size_t k = 0; k < 8; ++k)
                if (br[k] != (k == i ? Rational(kDegree[i]) : Rational(0)))
                    throw std::logic_error("grading element does not realise the grading");
        }
    }

    void build_star_of_david() {
        const Mat& e1 = ad_[E1];
        const Mat& e2 = ad_[E2];
        auto step = [](std::map<Label, Mat>& fam, char name, Label to, const Mat& x, Label from) {
            Mat v = commutator(x, fam.at(from));
            if (v.is_zero()) throw std::logic_error("star of David: zero vector at " + label_str(name, to));
            fam.emplace(to, std::move(v));
        };
        r_.emplace(Label{2, 1}, unit8(1, 7) - unit8(2, 8));
        step(r_, 'R', {1, 1}, e1, {2, 1});
        step(r_, 'R', {1, 0}, e2, {1, 1});
        step(r_, 'R', {0, 1}, e1, {1, 1});
        step(r_, 'R', {0, 0}, e2, {0, 1});
        step(r_, 'R', {0, -1}, e2, {0, 0});
        step(r_, 'R', {-1, 1}, e1, {0, 1});
        step(r_, 'R', {-1, 0}, e2, {-1, 1});
        step(r_, 'R', {-1, -1}, e2, {-1, 0});
        step(r_, 'R', {-1, -2}, e2, {-1, -1});

        s_.emplace(Label{1, 2}, unit8(1, 6) - unit8(3, 8));
        step(s_, 'S', {1, 1}, e2, {1, 2});
        step(s_, 'S', {0, 1}, e1, {1, 1});
        step(s_, 'S', {1, 0}, e2, {1, 1});
        step(s_, 'S', {0, 0}, e1, {1, 0});
        step(s_, 'S', {-1, 0}, e1, {0, 0});
        step(s_, 'S', {1, -1}, e2, {1, 0});
        step(s_, 'S', {0, -1}, e1, {1, -1});
        step(s_, 'S', {-1, -1}, e1, {0, -1});
        step(s_, 'S', {-2, -1}, e1, {-1, -1});
    }

    std::array<Mat, 8> m3_;
    std::array<Mat, 8> ad_;
    std::vector<std::vector<std::vector<Rational>>> c_;
    Mat kappa_;
    std::vector<Rational> grading_;
    std::map<Label, Mat> r_, s_;
    std::vector<Mat> so_;
    std::vector<std::string> so_names_;
    std::vector<int> so_deg_;
    SubspaceCoords<Rational> so_coords_;
};

inline const Sl3& algebra() { return Sl3::instance(); }

/// Basis coordinates of a single basis element.
inline std::vector<Rational> basis_vector(std::size_t i) {
    std::vector<Rational> v(8, Rational(0));
    v.at(i) = Rational(1);
    return v;
}

// ---------------------------------------------------------------------------
// module decompositions

struct Component {
    std::string name;
    Rational casimir;
    std::vector<Mat> basis;
};

struct ModuleDecomposition {
    std::string ambient;
    std::vector<Component> components;
    std::size_t total_dim() const {
        std::size_t n = 0;
        for (auto& c : components) n += c.basis.size();
        return n;
    }
    const Component& at(const std::string& name) const {
        for (auto& c : components)
            if (c.name == name) return c;
        throw std::out_of_range("ModuleDecomposition: no component " + name);
    }
    std::string dims_str() const {
        std::ostringstream os;
        for (auto& c : components) os << c.name << "=" << c.basis.size() << " ";
        return os.str();
    }
};

/// The derivation action X.M = [ad X, M] on gl(8), as a 64x64 matrix on row-major flattenings.
inline Mat derivation_matrix(const Mat& adx) {
    Mat d(64, 64);
    for (std::size_t j = 0; j < 64; ++j) {
        Mat e(8, 8);
        e(j / 8, j % 8) = Rational(1);
        auto c = commutator(adx, e).flat();
        for (std::size_t i = 0; i < 64; ++i) d(i, j) = c[i];
    }
    return d;
}

/// Casimir of the g-action on gl(8): sum_i D(X_i) D(X^i), {X^i} the kappa-dual basis.
inline Mat casimir_gl8() {
    const auto& g = algebra();
    auto kinv = inverse(g.killing());
    if (!kinv) throw std::logic_error("Killing form degenerate");
    std::array<Mat, 8> d;
    for (std::size_t i = 0; i < 8; ++i) d[i] = derivation_matrix(g.ad(i));
    Mat cas(64, 64);
    for (std::size_t i = 0; i < 8; ++i) {
        Mat dual(64, 64);
        for (std::size_t j = 0; j < 8; ++j)
            if (!(*kinv)(j, i).is_zero()) dual += Mat(d[j]).scale((*kinv)(j, i));
        cas += d[i] * dual;
    }
    return cas;
}

namespace detail {
inline std::vector<Rational> flat64(const Mat& m) { return m.flat(); }
inline Mat unflat64(const std::vector<Rational>& v) {
    Mat m(8, 8);
    for (std::size_t k = 0; k < 64; ++k) m(k / 8, k % 8) = v[k];
    return m;
}
// eigenvalue of an operator on a known nonzero eigenvector
inline Rational eigenvalue_on(const Mat& op, const std::vector<Rational>& v) {
    auto w = op.apply(v);
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) {
            Rational l = w[k] / v[k];
            for (std::size_t i = 0; i < v.size(); ++i)
                if (w[i] != l * v[i]) throw std::logic_error("eigenvalue_on: not an eigenvector");
            return l;
        }
    throw std::logic_error("eigenvalue_on: zero vector");
}
inline std::vector<std::vector<Rational>> eigenspace(const Mat& op, const Rational& l) {
    Mat m = op;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= l;
    return kernel(m);
}
inline std::vector<std::vector<Rational>> intersect(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<std::vector<Rational>>& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.front().size();
    // solve sum x_i a_i - sum y_j b_j = 0
    Mat m(n, a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < n; ++k) m(k, i) = a[i][k];
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t k = 0; k < n; ++k) m(k, a.size() + j) = -b[j][k];
    std::vector<std::vector<Rational>> out;
    for (auto& sol : kernel(m)) {
        std::vector<Rational> v(n, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t k = 0; k < n; ++k) v[k] += sol[i] * a[i][k];
        out.push_back(std::move(v));
    }
    return out;
}
}  // namespace detail

/// so53: checks ad(g) + R-span + S-span = {M : M^T kappa + kappa M = 0}.
/// gl8: Casimir eigenspaces, with the R/S eigenspace split by the two spans and the
/// Gamma(1,1) isotypic part split into ad(g) and its kappa-symmetric complement.
inline ModuleDecomposition decompose(const std::string& ambient) {
    const auto& g = algebra();
    ModuleDecomposition out;
    out.ambient = ambient;
    std::vector<Mat> adg(g.ad().begin(), g.ad().end());
    std::vector<Mat> rs, ss;
    for (auto& l : kRLabels) rs.push_back(g.R(l));
    for (auto& l : kSLabels) ss.push_back(g.S(l));

    auto flats = [](const std::vector<Mat>& ms) {
        std::vector<std::vector<Rational>> v;
        for (auto& m : ms) v.push_back(m.flat());
        return v;
    };

    if (ambient == "so53") {
        // {M : M^T k + k M = 0} as a kernel on 64 unknowns
        Mat lin(64, 64);
        for (std::size_t j = 0; j < 64; ++j) {
            Mat e(8, 8);
            e(j / 8, j % 8) = Rational(1);
            auto c = (e.transpose() * g.killing() + g.killing() * e).flat();
            for (std::size_t i = 0; i < 64; ++i) lin(i, j) = c[i];
        }
        auto so = kernel(lin);
        std::vector<std::vector<Rational>> all = flats(adg);
        for (auto& v : flats(rs)) all.push_back(v);
        for (auto& v : flats(ss)) all.push_back(v);
        std::size_t rank_all = span_dim(all);
        bool inside = true;
        for (auto& v : all) inside = inside && in_span(so, v);
        if (so.size() != 28 || rank_all != 28 || !inside) {
            std::ostringstream os;
            os << "decompose(so53): dim so=" << so.size() << " rank(ad+R+S)=" << rank_all << " inside=" << inside;
            throw std::logic_error(os.str());
        }
        out.components = {{"ad(g)", Rational(0), adg}, {"R", Rational(0), rs}, {"S", Rational(0), ss}};
        return out;
    }
    if (ambient != "gl8") throw std::invalid_argument("decompose: unknown ambient " + ambient);

    Mat cas = casimir_gl8();
    Rational l00 = detail::eigenvalue_on(cas, Mat::identity(8).flat());
    Rational l11 = detail::eigenvalue_on(cas, g.ad(CE0).flat());
    Rational l30 = detail::eigenvalue_on(cas, g.R({2, 1}).flat());
    Rational l03 = detail::eigenvalue_on(cas, g.S({1, 2}).flat());
    Rational l22 = detail::eigenvalue_on(cas, unit8(1, 8).flat());
    if (l30 != l03) throw std::logic_error("decompose: Casimir differs on R and S");

    auto to_mats = [](const std::vector<std::vector<Rational>>& vs) {
        std::vector<Mat> ms;
        for (auto& v : vs) ms.push_back(detail::unflat64(v));
        return ms;
    };
    auto e00 = detail::eigenspace(cas, l00);
    auto e11 = detail::eigenspace(cas, l11);
    auto e33 = detail::eigenspace(cas, l30);
    auto e22 = detail::eigenspace(cas, l22);

    // R + S must fill the shared eigenspace
    auto rsf = flats(rs), ssf = flats(ss);
    std::vector<std::vector<Rational>> rs_all = rsf;
    rs_all.insert(rs_all.end(), ssf.begin(), ssf.end());
    bool rs_ok = span_dim(rs_all) == e33.size();
    for (auto& v : rs_all) rs_ok = rs_ok && in_span(e33, v);

    // second Gamma(1,1): isotypic part intersected with {M : M^T k = k M}
    Mat sym(64, 64);
    for (std::size_t j = 0; j < 64; ++j) {
        Mat e(8, 8);
        e(j / 8, j % 8) = Rational(1);
        auto c = (e.transpose() * g.killing() - g.killing() * e).flat();
        for (std::size_t i = 0; i < 64; ++i) sym(i, j) = c[i];
    }
    auto second = detail::intersect(e11, kernel(sym));
    bool ad_ok = true;
    for (auto& v : flats(adg)) ad_ok = ad_ok && in_span(e11, v);

    out.components = {{"Gamma00", l00, to_mats(e00)},
                      {"Gamma11(isotypic)", l11, to_mats(e11)},
                      {"Gamma30", l30, rs},
                      {"Gamma03", l03, ss},
                      {"Gamma22", l22, to_mats(e22)},
                      {"ad(g)", l11, adg},
                      {"Gamma11(second)", l11, to_mats(second)}};
    std::size_t sum = e00.size() + e11.size() + e33.size() + e22.size();
    if (sum != 64 || !rs_ok || !ad_ok || second.size() != 8 || e00.size() != 1 || e11.size() != 16 ||
        e33.size() != 20 || e22.size() != 27) {
        std::ostringstream os;
        os << "decompose(gl8): dims " << e00.size() << "," << e11.size() << "," << e33.size() << "," << e22.size()
           << " second=" << second.size() << " rs_ok=" << rs_ok << " ad_ok=" << ad_ok;
        throw std::logic_error(os.str());
    }
    return out;
}

struct InclusionFailure {
    std::string a, b, part;
};

/// [R,R] in S, [S,S] in R, [R,S] in ad(g), for all basis pairs.
inline std::vector<InclusionFailure> bracket_inclusions() {
    const auto& g = algebra();
    std::vector<InclusionFailure> bad;
    auto check = [&](char fa, Label la, const Mat& a, char fb, Label lb, const Mat& b, const char* target) {
        auto p = g.project(commutator(a, b));
        std::string t(target);
        bool ok = (t == "S")   ? (p.g.is_zero() && p.r.is_zero())
                  : (t == "R") ? (p.g.is_zero() && p.s.is_zero())
                               : (p.r.is_zero() && p.s.is_zero());
        if (!ok) bad.push_back({label_str(fa, la), label_str(fb, lb), t});
    };
    for (auto& [la, a] : g.R_family())
        for (auto& [lb, b] : g.R_family()) check('R', la, a, 'R', lb, b, "S");
    for (auto& [la, a] : g.S_family())
        for (auto& [lb, b] : g.S_family()) check('S', la, a, 'S', lb, b, "R");
    for (auto& [la, a] : g.R_family())
        for (auto& [lb, b] : g.S_family()) check('R', la, a, 'S', lb, b, "g");
    return bad;
}

/// Jacobi identity on all basis triples; returns the number of failing triples.
inline int jacobi_failures() {
    const auto& g = algebra();
    int bad = 0;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            for (std::size_t k = 0; k < 8; ++k) {
                auto a = g.bracket(basis_vector(i), g.bracket(j, k));
                auto b = g.bracket(basis_vector(j), g.bracket(k, i));
                auto c = g.bracket(basis_vector(k), g.bracket(i, j));
                for (std::size_t t = 0; t < 8; ++t)
                    if (!(a[t] + b[t] + c[t]).is_zero()) {
                        ++bad;
                        break;
                    }
            }
    return bad;
}

}  // namespace sl3ext::sl3

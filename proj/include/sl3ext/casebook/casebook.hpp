#pragma once

#include "sl3ext/algebra/ideal.hpp"
#include "sl3ext/algebra/json.hpp"
#include "sl3ext/algebra/linalg.hpp"
#include "sl3ext/algebra/poly.hpp"
#include "sl3ext/cochain/cochain.hpp"
#include "sl3ext/sl3/sl3.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl3ext::casebook {

using sl3::Mat;
using PolyMat = Matrix<Poly>;
using Params = std::map<std::string, Rational>;
using Vec = std::vector<Rational>;

enum class CaseId { O, I0, I1, I2, I2prime, II0, II1, II2 };

inline const std::vector<CaseId>& all_cases() {
    static const std::vector<CaseId> v{CaseId::O,       CaseId::I0,  CaseId::I1,  CaseId::I2,
                                       CaseId::I2prime, CaseId::II0, CaseId::II1, CaseId::II2};
    return v;
}

inline std::string case_name(CaseId id) {
    switch (id) {
        case CaseId::O: return "O";
        case CaseId::I0: return "I0";
        case CaseId::I1: return "I1";
        case CaseId::I2: return "I2";
        case CaseId::I2prime: return "I2prime";
        case CaseId::II0: return "II0";
        case CaseId::II1: return "II1";
        case CaseId::II2: return "II2";
    }
    return "?";
}

inline std::optional<CaseId> parse_case(const std::string& s) {
    for (auto id : all_cases())
        if (case_name(id) == s) return id;
    return std::nullopt;
}

/// Bad parameter names or values violating a case constraint.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline const RingPtr& ring() {
    static const RingPtr r = make_ring({"P1", "P2", "Q12"});
    return r;
}
inline Poly pv(std::string_view n) { return Poly::var(ring(), n); }
inline Poly pc(long n, long d = 1) { return Poly(ring(), Rational(n, d)); }

// ---------------------------------------------------------------------------
// noncommutative operator polynomials in Z1, Z2

/// Sum of coefficient * word; a word (w1,...,wk) stands for Z_{w1}...Z_{wk}.
struct NCPoly {
    std::map<std::vector<int>, Poly> terms;

    static NCPoly scalar(const Poly& c) {
        NCPoly r;
        if (!c.is_zero()) r.terms[{}] = c;
        return r;
    }
    static NCPoly Z(int i) {
        NCPoly r;
        r.terms[{i}] = pc(1);
        return r;
    }
    NCPoly& operator+=(const NCPoly& o) {
        for (auto& [w, c] : o.terms) {
            terms[w] += c;
            if (terms[w].is_zero()) terms.erase(w);
        }
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) {
        for (auto& [w, c] : b.terms) {
            a.terms[w] -= c;
            if (a.terms[w].is_zero()) a.terms.erase(w);
        }
        return a;
    }
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        NCPoly r;
        for (auto& [wa, ca] : a.terms)
            for (auto& [wb, cb] : b.terms) {
                auto w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r += scalar(ca * cb).shift(w);
            }
        return r;
    }
    friend NCPoly operator*(const Poly& c, const NCPoly& a) { return scalar(c) * a; }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            auto& [w, c] = *it;
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            for (int x : w) s += "*Z" + std::to_string(x);
        }
        return s;
    }

private:
    NCPoly shift(const std::vector<int>& w) const {
        NCPoly r;
        for (auto& [_, c] : terms) r.terms[w] = c;
        return r;
    }
};

// ---------------------------------------------------------------------------
// case specifications

struct Constraint {
    std::string text;
    Poly expr;
    bool nonzero = false;  // expr != 0 instead of expr == 0
};

/// Structure constants c[i][j][k]: [X_i, X_j] = sum_k c[i][j][k] X_k, antisymmetric.
using Brackets = std::vector<std::vector<std::vector<Poly>>>;

struct Variant {
    Brackets gamma;
    std::vector<PolyMat> phi;  // phi(Z0), phi(Z1), phi(Z2) [, phi(H)]
};

struct CaseSpec {
    CaseId id = CaseId::O;
    std::string name;
    std::vector<std::string> params;
    Params defaults;
    std::vector<Constraint> constraints;
    std::vector<std::string> basis;
    Variant verbatim;
    std::optional<Variant> corrected;
    std::vector<std::string> corrections;
    std::array<NCPoly, 2> equations;
    std::array<std::string, 2> equation_text;
    int chi_branch = 0;  // 0: chi = 0, 1: xi^R only, 2: xi^R + xi^S
    bool excluded = false;
    std::optional<std::vector<Poly>> printed_stabilizer;  // sl3 coordinates

    std::size_t dim() const { return basis.size(); }
    const Variant& effective() const { return corrected ? *corrected : verbatim; }
};

namespace build {

inline PolyMat ad(std::size_t i) { return lift<Poly>(sl3::algebra().ad(i)); }
inline PolyMat R(int i, int j) { return lift<Poly>(sl3::algebra().R({i, j})); }
inline PolyMat S(int i, int j) { return lift<Poly>(sl3::algebra().S({i, j})); }

inline Brackets empty(std::size_t n) {
    return Brackets(n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, pc(0))));
}
inline void set(Brackets& b, std::size_t i, std::size_t j, std::vector<Poly> v) {
    b[i][j] = v;
    for (auto& x : v) x = -x;
    b[j][i] = v;
}

}  // namespace build

inline CaseSpec make_case(CaseId id) {
    using namespace build;
    using sl3::CE0, sl3::CE1, sl3::CE2, sl3::H1, sl3::H2, sl3::E0, sl3::E1, sl3::E2;
    const Poly P1 = pv("P1"), P2 = pv("P2"), Q12 = pv("Q12"), one = pc(1), zero = pc(0);
    const NCPoly a = NCPoly::Z(1), b = NCPoly::Z(2), I = NCPoly::scalar(one);
    auto k = [](const Poly& c) { return NCPoly::scalar(c); };

    CaseSpec c;
    c.id = id;
    c.name = case_name(id);
    c.basis = {"Z0", "Z1", "Z2"};
    Brackets g = empty(3);
    set(g, 1, 2, {-one, zero, zero});

    switch (id) {
        case CaseId::O:
            c.verbatim = {g, {ad(E0), ad(E1), ad(E2)}};
            c.equations = {a * a, b * b};
            c.equation_text = {"Z1^2 u = 0", "Z2^2 u = 0"};
            break;

        case CaseId::I0: {
            c.basis.push_back("H");
            Brackets gv = empty(4);
            set(gv, 1, 2, {-one, zero, zero, zero});
            set(gv, 3, 1, {zero, pc(-2), zero, zero});
            set(gv, 3, 2, {zero, zero, -one, zero});
            Brackets gc = gv;
            set(gv, 3, 0, {zero, pc(-3), zero, zero});
            set(gc, 3, 0, {pc(-3), zero, zero, zero});
            std::vector<PolyMat> phi{ad(E0), ad(E1), ad(E2) + R(-1, 1), pc(5, 3) * ad(H1) + pc(4, 3) * ad(H2)};
            c.verbatim = {gv, phi};
            c.corrected = Variant{gc, phi};
            c.corrections = {"[H,Z0] = -3 Z1 read as [H,Z0] = -3 Z0"};
            c.equations = {a * a, b * b - pc(6) * a};
            c.equation_text = {"Z1^2 u = 0", "Z2^2 u = 6 Z1 u"};
            c.chi_branch = 1;
            std::vector<Poly> h(8, zero);
            h[H1] = pc(5, 3);
            h[H2] = pc(4, 3);
            c.printed_stabilizer = h;
            break;
        }

        case CaseId::I1: {
            c.params = {"P2", "Q12"};
            c.defaults = {{"P2", Rational(5)}, {"Q12", Rational(0)}};
            c.constraints = {{"(P2,Q12) != (0,0)", P2 * P2 + Q12 * Q12, true}};
            set(g, 1, 2, {-one, P2, zero});
            set(g, 0, 2, {P2, Q12, zero});
            c.verbatim = {g,
                          {ad(E0), ad(E1),
                           ad(E2) + (pc(2, 3) * P2) * ad(H1) + (P2 / Rational(3)) * ad(H2) - Q12 * ad(CE2) + R(-1, 1)}};
            c.equations = {a * a, b * b - pc(6) * a - (pc(2) * P2) * b + k(Q12 + P2 * P2) * I};
            c.equation_text = {"Z1^2 u = 0", "Z2^2 u = 6 Z1 u + 2 P2 Z2 u - (Q12 + P2^2) u"};
            c.chi_branch = 1;
            std::vector<Poly> h(8, zero);
            h[H1] = pc(5, 3);
            h[H2] = pc(4, 3);
            h[CE2] = P2 / Rational(5);
            c.printed_stabilizer = h;
            break;
        }

        case CaseId::I2:
        case CaseId::I2prime: {
            bool prime = id == CaseId::I2prime;
            c.params = {"P1"};
            c.defaults = {{"P1", Rational(1)}};
            c.constraints = {{"P1 != 0", P1, true}};
            Poly q = prime ? (P1 * P1) / Rational(4) : P1 * P1;
            set(g, 1, 2, {-one, zero, -P1});
            set(g, 0, 1, {P1, zero, q});
            PolyMat z1 = ad(E1) + (P1 / Rational(3)) * (ad(H1) + pc(2) * ad(H2)) + q * ad(CE1);
            PolyMat z0, z2;
            if (!prime) {
                z0 = ad(E0) - (P1 / Rational(2)) * R(-1, 1) + (pc(3) * P1.pow(3)) * R(1, 1) - (pc(6) * P1.pow(4)) * R(2, 1);
                z2 = ad(E2) + R(-1, 1) - (pc(3, 2) * P1) * R(0, 1) + (pc(3) * P1.pow(3)) * R(2, 1);
                c.equations = {a * (a - pc(2) * P1 * I), b * b - pc(6) * a + (pc(9) * P1) * I};
                c.equation_text = {"Z1 (Z1 - 2 P1) u = 0", "Z2^2 u = 6 Z1 u - 9 P1 u"};
            } else {
                z0 = ad(E0) - (P1 / Rational(2)) * R(-1, 1) + (pc(3, 4) * P1.pow(2)) * R(0, 1) -
                     (pc(3, 4) * P1.pow(3)) * R(1, 1) + (pc(3, 8) * P1.pow(4)) * R(2, 1);
                z2 = ad(E2) + R(-1, 1) - (pc(3, 2) * P1) * R(0, 1) + (pc(3, 2) * P1.pow(2)) * R(1, 1) -
                     (pc(3, 4) * P1.pow(3)) * R(2, 1);
                c.equations = {(pc(2) * a - P1 * I) * (pc(2) * a - (pc(3) * P1) * I), b * b - pc(6) * a + (pc(9) * P1) * I};
                c.equation_text = {"(2 Z1 - P1)(2 Z1 - 3 P1) u = 0", "Z2^2 u = 6 Z1 u - 9 P1 u"};
                c.excluded = true;
                std::vector<Poly> h(8, zero);
                h[H1] = pc(5, 3);
                h[H2] = pc(4, 3);
                h[CE1] = P1;
                c.printed_stabilizer = h;
            }
            c.verbatim = {g, {z0, z1, z2}};
            c.chi_branch = 1;
            break;
        }

        case CaseId::II0: {
            set(g, 0, 1, {zero, pc(36, 5), zero});
            set(g, 0, 2, {zero, zero, pc(-36, 5)});
            PolyMat z0 = ad(E0) + pc(6, 5) * (ad(H1) - ad(H2)) + pc(2916, 25) * ad(CE0);
            PolyMat z1 = ad(E1) + S(1, -1) - pc(54, 5) * ad(CE2);
            c.verbatim = {g, {z0, z1, ad(E2) + R(-1, 1) - pc(54, 5) * ad(CE2)}};
            c.corrected = Variant{g, {z0, z1, ad(E2) + R(-1, 1) - pc(54, 5) * ad(CE1)}};
            c.corrections = {"Z2: -54/5 ce2 read as -54/5 ce1"};
            c.equations = {a * a + pc(6) * b, b * b - pc(6) * a};
            c.equation_text = {"Z1^2 u = -6 Z2 u", "Z2^2 u = 6 Z1 u"};
            c.chi_branch = 2;
            break;
        }

        case CaseId::II1:
        case CaseId::II2: {
            bool two = id == CaseId::II2;
            c.params = {"P1", "P2"};
            c.defaults = two ? Params{{"P1", Rational(12)}, {"P2", Rational(-12)}} : Params{{"P1", Rational(1)}, {"P2", Rational(-9)}};
            long prod = two ? -144 : -9;
            c.constraints = {{"P1*P2=" + std::to_string(prod), P1 * P2 - pc(prod), false}};
            Rational f = two ? Rational(1, 4) : Rational(1);
            set(g, 0, 1, {P1, -(P1 * P2) * Poly(f), (P1 * P1) * Poly(f)});
            set(g, 0, 2, {P2, -(P2 * P2) * Poly(f), (P1 * P2) * Poly(f)});
            set(g, 1, 2, {-one, P2, -P1});
            auto pw = [](const Poly& p, int e) { return p.pow(e); };
            PolyMat z0v, z0c, z1v, z1c, z2v, z2c;
            if (!two) {
                PolyMat z0 = ad(E0) - pc(1, 2) * (P1 * R(-1, 1) - P2 * S(1, -1)) +
                             pc(3) * (pw(P1, 3) * R(1, 1) - pw(P2, 3) * S(1, 1)) -
                             pc(6) * (pw(P1, 4) * R(2, 1) - pw(P2, 4) * S(1, 2)) + pc(3, 2) * (ad(H1) - ad(H2)) +
                             pc(9) * (P1 * ad(CE1) - P2 * ad(CE2)) - pc(567, 4) * ad(CE0);
                z0v = z0c = z0;
                PolyMat z1 = ad(E1) + S(1, -1) - (pc(3, 2) * P2) * S(1, 0) + (P1 / Rational(3)) * (ad(H1) + pc(2) * ad(H2)) +
                             (P1 * P1) * ad(CE1) - pc(27, 2) * ad(CE2) + (pc(9, 2) * P1) * ad(CE0);
                z1v = z1 - (pc(3) * pw(P2, 3)) * S(1, 2);
                z1c = z1 + (pc(3) * pw(P2, 3)) * S(1, 2);
                PolyMat z2 = R(-1, 1) - (pc(3, 2) * P1) * R(0, 1) + (P2 / Rational(3)) * (pc(2) * ad(H1) + ad(H2)) -
                             pc(27, 2) * ad(CE1) + (P2 * P2) * ad(CE2) - (pc(9, 2) * P2) * ad(CE0);
                z2v = z2 + ad(E1) + (pc(3) * pw(P1, 2)) * R(2, 1);
                z2c = z2 + ad(E2) + (pc(3) * pw(P1, 3)) * R(2, 1);
                c.corrections = {"Z1: -3 P2^3 S(1,2) read as +3 P2^3 S(1,2)", "Z2: leading e1 read as e2",
                                 "Z2: 3 P1^2 R(2,1) read as 3 P1^3 R(2,1)"};
                c.equation_text = {"(Z1 - P1)^2 u = -6 (Z2 - P2) u + (P1^2 + 3 P2) u",
                                   "(Z2 - P2)^2 u = 6 (Z1 - P1) u + (P2^2 - 3 P1) u"};
            } else {
                PolyMat z0 = ad(E0) - pc(1, 2) * (P1 * R(-1, 1) - P2 * S(1, -1)) +
                             pc(3, 4) * (pw(P1, 2) * R(0, 1) - pw(P2, 2) * S(1, 0)) +
                             pc(3, 8) * (pw(P1, 4) * R(2, 1) - pw(P2, 4) * S(1, 2)) + pc(6) * (ad(H1) - ad(H2)) +
                             pc(324) * ad(CE0);
                PolyMat cubic = pw(P1, 3) * R(1, 1) - pw(P2, 3) * S(1, 1);
                z0v = z0 + pc(3, 4) * cubic;
                z0c = z0 - pc(3, 4) * cubic;
                z1v = z1c = ad(E1) + S(1, -1) - (pc(3, 2) * P2) * S(1, 0) + (pc(3, 2) * pw(P2, 2)) * S(1, 1) -
                            (pc(3, 4) * pw(P2, 3)) * S(1, 2) + (P1 / Rational(3)) * (ad(H1) + pc(2) * ad(H2)) +
                            (pw(P1, 2) / Rational(4)) * ad(CE1) - pc(54) * ad(CE2);
                PolyMat z2 = R(-1, 1) - (pc(3, 2) * P1) * R(0, 1) + (pc(3, 2) * pw(P1, 2)) * R(1, 1) -
                             (pc(3, 4) * pw(P1, 3)) * R(2, 1) + (P2 / Rational(3)) * (pc(2) * ad(H1) + ad(H2)) -
                             pc(54) * ad(CE1) + (pw(P2, 2) / Rational(4)) * ad(CE2);
                z2v = z2 + ad(E1);
                z2c = z2 + ad(E2);
                c.corrections = {"Z0: +3/4 (P1^3 R(1,1) - P2^3 S(1,1)) read with sign -", "Z2: leading e1 read as e2"};
                c.equation_text = {"(Z1 - P1)^2 u = -6 (Z2 - P2) u + (P1^2/4 + 3 P2) u",
                                   "(Z2 - P2)^2 u = 6 (Z1 - P1) u + (P2^2/4 - 3 P1) u"};
            }
            c.verbatim = {g, {z0v, z1v, z2v}};
            c.corrected = Variant{g, {z0c, z1c, z2c}};
            NCPoly am = a - P1 * I, bm = b - P2 * I;
            Poly c1 = P1 * P1 * Poly(f) + pc(3) * P2, c2 = P2 * P2 * Poly(f) - pc(3) * P1;
            c.equations = {am * am + pc(6) * bm - c1 * I, bm * bm - pc(6) * am - c2 * I};
            c.chi_branch = 2;
            break;
        }
    }
    return c;
}

inline const std::vector<CaseSpec>& case_catalog() {
    static const std::vector<CaseSpec> cat = [] {
        std::vector<CaseSpec> v;
        for (auto id : all_cases()) v.push_back(make_case(id));
        return v;
    }();
    return cat;
}

inline const CaseSpec& spec(CaseId id) { return case_catalog().at(static_cast<std::size_t>(id)); }

/// Defaults overridden by `given`; unknown names and violated constraints throw ConfigError.
inline Params resolve_params(const CaseSpec& c, const Params& given) {
    Params p = c.defaults;
    for (auto& [k, v] : given) {
        if (std::find(c.params.begin(), c.params.end(), k) == c.params.end())
            throw ConfigError("unknown parameter " + k + " for case " + c.name);
        p[k] = v;
    }
    std::map<std::string, Rational> full{{"P1", Rational(0)}, {"P2", Rational(0)}, {"Q12", Rational(0)}};
    for (auto& [k, v] : p) full[k] = v;
    for (auto& con : c.constraints) {
        Rational val = con.expr.evaluate(full).constant_term();
        if (con.nonzero ? val.is_zero() : !val.is_zero()) throw ConfigError("constraint " + con.text + " violated");
    }
    return full;
}

inline Rational eval(const Poly& x, const Params& p) {
    return x.is_zero() ? Rational(0) : x.evaluate(p).constant_value();
}
inline Mat eval(const PolyMat& m, const Params& p) {
    return m.map([&](const Poly& x) { return eval(x, p); });
}
inline std::vector<Mat> eval(const std::vector<PolyMat>& ms, const Params& p) {
    std::vector<Mat> out;
    for (auto& m : ms) out.push_back(eval(m, p));
    return out;
}
using RBrackets = std::vector<std::vector<Vec>>;
inline RBrackets eval(const Brackets& b, const Params& p) {
    RBrackets out(b.size(), std::vector<Vec>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            for (auto& x : b[i][j]) out[i][j].push_back(eval(x, p));
    return out;
}

// ---------------------------------------------------------------------------
// abstract symmetry algebra

struct JacobiFailure {
    std::size_t i, j, k;
    Vec residual;
};

inline std::vector<JacobiFailure> jacobi_failures(const RBrackets& c) {
    std::size_t n = c.size();
    auto br = [&](const Vec& x, const Vec& y) {
        Vec r(n, Rational(0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (!x[a].is_zero() && !y[b].is_zero())
                    for (std::size_t t = 0; t < n; ++t) r[t] += x[a] * y[b] * c[a][b][t];
        return r;
    };
    auto e = [&](std::size_t i) {
        Vec v(n, Rational(0));
        v[i] = Rational(1);
        return v;
    };
    std::vector<JacobiFailure> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec r = br(e(i), c[j][k]);
                Vec s = br(e(j), c[k][i]);
                Vec t = br(e(k), c[i][j]);
                bool zero = true;
                for (std::size_t a = 0; a < n; ++a) {
                    r[a] += s[a] + t[a];
                    zero = zero && r[a].is_zero();
                }
                if (!zero) out.push_back({i, j, k, r});
            }
    return out;
}

namespace detail {
inline Vec ad_apply(const std::vector<Mat>& ad, const Vec& x, const Vec& y) {
    Vec r(y.size(), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) {
            auto v = ad[i].apply(y);
            for (std::size_t k = 0; k < r.size(); ++k) r[k] += x[i] * v[k];
        }
    return r;
}
}  // namespace detail

struct SymmetryAlgebra {
    std::size_t dim = 0;
    RBrackets c;
    bool jacobi = false;
    Mat killing;
    Signature killing_signature;
    std::vector<Vec> derived_basis;
    bool derived_abelian = false;
};

inline SymmetryAlgebra invariants(const RBrackets& c) {
    SymmetryAlgebra s;
    s.dim = c.size();
    s.c = c;
    s.jacobi = jacobi_failures(c).empty();
    std::size_t n = s.dim;
    std::vector<Mat> ad(n, Mat(n, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) ad[i](k, j) = c[i][j][k];
    s.killing = Mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s.killing(i, j) = (ad[i] * ad[j]).trace();
    s.killing_signature = signature(s.killing);
    std::vector<Vec> all;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) all.push_back(c[i][j]);
    if (!all.empty()) {
        auto e = rref(Mat::from_rows(all, n));
        for (std::size_t r = 0; r < e.pivots.size(); ++r) s.derived_basis.push_back(e.reduced.row(r));
    }
    s.derived_abelian = true;
    for (auto& x : s.derived_basis)
        for (auto& y : s.derived_basis) {
            Vec z = detail::ad_apply(ad, x, y);
            for (auto& v : z) s.derived_abelian = s.derived_abelian && v.is_zero();
        }
    return s;
}

/// Validates parameters; uses the corrected bracket table when one exists.
inline SymmetryAlgebra symmetry_algebra(CaseId id, const Params& given = {}) {
    const auto& c = spec(id);
    return invariants(eval(c.effective().gamma, resolve_params(c, given)));
}

/// Structure constants of span{phi_i}, re-derived from matrix commutators; nullopt if not closed.
inline std::optional<RBrackets> derived_brackets(const std::vector<Mat>& phi) {
    std::vector<Vec> flats;
    for (auto& m : phi) flats.push_back(m.flat());
    SubspaceCoords<Rational> sc(flats);
    std::size_t n = phi.size();
    RBrackets out(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto x = sc.coords(commutator(phi[i], phi[j]).flat());
            if (!x) return std::nullopt;
            out[i][j] = *x;
        }
    return out;
}

// ---------------------------------------------------------------------------
// embedding checks

struct Residual {
    std::string where;
    Mat value;
};

struct EmbeddingReport {
    std::string variant;
    bool so = false;
    bool flat = false;
    bool symbol = false;
    std::vector<Residual> residuals;
    std::vector<std::string> notes;
    bool ok() const { return so && flat && symbol; }
};

namespace detail {

inline cochain::Cochain<Rational> expected_chi1(int branch) {
    auto c = cochain::Cochain<Rational>::zero(1);
    if (branch >= 1) c = c + cochain::xi_R();
    if (branch == 2) c = c + cochain::xi_S();
    return c;
}

}  // namespace detail

/// (a) so-membership, (b) [phi_i, phi_j] = phi(gamma(Z_i, Z_j)), (c) symbol condition.
inline EmbeddingReport check_embedding(const std::vector<Mat>& phi, const RBrackets& gamma, int chi_branch,
                                       const std::string& variant = "") {
    const auto& g = sl3::algebra();
    EmbeddingReport r;
    r.variant = variant;
    r.so = true;
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (!g.is_in_so(phi[i])) {
            r.so = false;
            r.residuals.push_back({"so:" + std::to_string(i), phi[i].transpose() * g.killing() + g.killing() * phi[i]});
        }
    r.flat = true;
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = i + 1; j < phi.size(); ++j) {
            Mat m = commutator(phi[i], phi[j]);
            for (std::size_t k = 0; k < phi.size(); ++k)
                if (!gamma[i][j][k].is_zero()) m -= Mat(phi[k]).scale(gamma[i][j][k]);
            if (!m.is_zero()) {
                r.flat = false;
                r.residuals.push_back({"flat:" + std::to_string(i) + std::to_string(j), m});
            }
        }
    r.symbol = r.so;
    if (!r.so) return r;
    auto chi1 = cochain::Cochain<Rational>::zero(1);
    for (std::size_t i = 0; i < 3; ++i) {
        auto c = *g.so_coords(phi[i]);
        int din = cochain::kGmDeg[i];
        for (std::size_t k = 0; k < 8; ++k) {
            if (sl3::kDegree[k] >= 0) continue;
            Rational want = k == cochain::kGm[i] ? Rational(1) : Rational(0);
            if (c[k] != want) {
                r.symbol = false;
                r.notes.push_back("phi(Z" + std::to_string(i) + ") has " + g.so_names()[k] + " coefficient " + c[k].str());
            }
        }
        for (std::size_t k = 8; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            int d = g.so_degrees()[k] - din;
            if (d < 1) {
                r.symbol = false;
                r.notes.push_back("phi(Z" + std::to_string(i) + "): " + g.so_names()[k] + " has degree " + std::to_string(d));
            }
            if (d == 1) chi1.values[i] += Mat(g.so_basis()[k]).scale(c[k]);
        }
    }
    auto want = detail::expected_chi1(chi_branch);
    if (chi1.values != want.values) {
        r.symbol = false;
        r.notes.push_back("degree-one part of chi does not match the branch");
        for (std::size_t i = 0; i < 3; ++i)
            if (chi1.values[i] != want.values[i]) r.residuals.push_back({"chi1:" + std::to_string(i), chi1.values[i] - want.values[i]});
    }
    return r;
}

inline EmbeddingReport check_variant(const CaseSpec& c, const Variant& v, const Params& p, const std::string& name) {
    return check_embedding(eval(v.phi, p), eval(v.gamma, p), c.chi_branch, name);
}

struct CaseEmbedding {
    EmbeddingReport verbatim;
    std::optional<EmbeddingReport> corrected;
    /// The variant the rest of the engine uses: corrected if present, else verbatim.
    const EmbeddingReport& effective() const { return corrected ? *corrected : verbatim; }
};

inline CaseEmbedding embedding(CaseId id, const Params& given = {}) {
    const auto& c = spec(id);
    Params p = resolve_params(c, given);
    CaseEmbedding e{check_variant(c, c.verbatim, p, "verbatim"), std::nullopt};
    if (c.corrected) e.corrected = check_variant(c, *c.corrected, p, "corrected");
    return e;
}

inline std::vector<Mat> embedding_matrices(CaseId id, const Params& given = {}) {
    const auto& c = spec(id);
    return eval(c.effective().phi, resolve_params(c, given));
}

/// Flatness with symbolic parameters; for product constraints P2 is replaced by const/P1.
inline bool symbolic_flatness(CaseId id) {
    const auto& c = spec(id);
    const auto& v = c.effective();
    std::optional<Poly> p2;
    for (auto& con : c.constraints)
        if (!con.nonzero) {
            Rational k = -eval(con.expr, {{"P1", Rational(0)}, {"P2", Rational(0)}, {"Q12", Rational(0)}});
            p2 = Poly(ring(), k) * pv("P1").pow(-1);
        }
    auto red = [&](const Poly& x) { return p2 ? x.substitute("P2", *p2) : x; };
    std::vector<PolyMat> phi;
    for (auto& m : v.phi) phi.push_back(m.map(red));
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (!sl3::algebra().is_in_so(phi[i])) return false;
        for (std::size_t j = i + 1; j < phi.size(); ++j) {
            PolyMat m = commutator(phi[i], phi[j]);
            for (std::size_t k = 0; k < phi.size(); ++k) m -= PolyMat(phi[k]).scale(red(v.gamma[i][j][k]));
            if (!m.is_zero()) return false;
        }
    }
    return true;
}

/// Dimensions of U_1 = <A_1>, U_{k+1} = U_k + phi(Z1) U_k + phi(Z2) U_k until stable.
inline std::vector<std::size_t> osculating_dims(const std::vector<Mat>& phi) {
    std::vector<Vec> u{sl3::basis_vector(0)};
    std::vector<std::size_t> dims{1};
    while (true) {
        std::vector<Vec> next = u;
        for (auto& x : u) {
            next.push_back(phi[1].apply(x));
            next.push_back(phi[2].apply(x));
        }
        auto e = rref(Mat::from_rows(next, 8));
        std::vector<Vec> basis;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) basis.push_back(e.reduced.row(r));
        if (basis.size() == u.size()) return dims;
        u = std::move(basis);
        dims.push_back(u.size());
    }
}

inline std::vector<std::size_t> osculating_filtration(CaseId id, const Params& given = {}) {
    return osculating_dims(embedding_matrices(id, given));
}

// ---------------------------------------------------------------------------
// stabilizer extension

struct Extension {
    Vec a;        // (a0, a1, a2)
    Vec element;  // sl3 coordinates of 5H1 + 4H2 + a1 ce1 + a2 ce2 + a0 ce0
};

/// Solves for H = 5H1 + 4H2 + a1 ce1 + a2 ce2 + a0 ce0 with [H, phi(Z_i)] in span{phi(Z), H}.
/// Returns nullopt when the system is inconsistent. Throws if it cannot be decided by linear pivots.
inline std::optional<Extension> extension_of(const std::vector<Mat>& phi) {
    static const RingPtr ar = make_ring({"a0", "a1", "a2"});
    const auto& g = sl3::algebra();
    auto A = [&](const char* n) { return Poly::var(ar, n); };
    auto L = [&](const Mat& m) { return m.map([&](const Rational& x) { return Poly(ar, x); }); };
    PolyMat hm = L(g.ad(sl3::H1)).scale(Poly(ar, Rational(5))) + L(g.ad(sl3::H2)).scale(Poly(ar, Rational(4))) +
                 L(g.ad(sl3::CE1)).scale(A("a1")) + L(g.ad(sl3::CE2)).scale(A("a2")) + L(g.ad(sl3::CE0)).scale(A("a0"));
    std::vector<Poly> eqs;
    for (std::size_t i = 0; i < 3; ++i) {
        PolyMat r = commutator(hm, L(phi[i]));
        auto c = g.so_coords(r);
        if (!c) throw std::logic_error("extension_of: bracket left so(V,kappa)");
        const std::array<std::size_t, 3> idx{sl3::E0, sl3::E1, sl3::E2};
        PolyMat r2 = r;
        for (std::size_t k = 0; k < 3; ++k) r2 -= L(phi[k]).scale((*c)[idx[k]]);
        Poly y = (*g.so_coords(r2))[sl3::H1] / Rational(5);
        PolyMat r3 = r2 - PolyMat(hm).scale(y);
        auto c3 = g.so_coords(r3);
        for (auto& e : *c3)
            if (!e.is_zero()) eqs.push_back(e);
    }
    auto el = eliminate(eqs, {"a0", "a1", "a2"});
    for (auto& l : el.leftovers) {
        if (l.is_constant()) return std::nullopt;
        throw std::logic_error("extension_of: nonlinear leftover " + l.str());
    }
    Extension ext;
    for (const char* n : {"a0", "a1", "a2"}) {
        auto it = el.solution.find(n);
        Poly v = it == el.solution.end() ? Poly(ar, Rational(0)) : it->second;
        if (!v.is_constant()) throw std::logic_error("extension_of: free unknown " + std::string(n));
        ext.a.push_back(v.constant_term());
    }
    ext.element = Vec(8, Rational(0));
    ext.element[sl3::H1] = Rational(5);
    ext.element[sl3::H2] = Rational(4);
    ext.element[sl3::CE0] = ext.a[0];
    ext.element[sl3::CE1] = ext.a[1];
    ext.element[sl3::CE2] = ext.a[2];
    return ext;
}

inline std::optional<Extension> stabilizer_extension(CaseId id, const Params& given = {}) {
    if (spec(id).dim() != 3) throw std::invalid_argument("stabilizer_extension: case is not 3-dimensional");
    return extension_of(embedding_matrices(id, given));
}

struct GridPoint {
    Rational P2, Q12;
    bool on_locus = false;
    bool extends = false;
};

inline std::vector<GridPoint> stabilizer_grid() {
    std::vector<GridPoint> out;
    for (Rational p2 : {Rational(-5), Rational(-2), Rational(-1), Rational(1, 2), Rational(1), Rational(3), Rational(5)})
        for (Rational q : {-p2 * p2 / Rational(25), Rational(0), Rational(1)}) {
            GridPoint gp{p2, q};
            gp.on_locus = (q + p2 * p2 / Rational(25)).is_zero();
            gp.extends = stabilizer_extension(CaseId::I1, {{"P2", p2}, {"Q12", q}}).has_value();
            out.push_back(gp);
        }
    return out;
}

// ---------------------------------------------------------------------------
// the Cayley model (case I0)

struct CheckLine {
    std::string id;
    bool pass = false;
    std::string detail;
};

namespace detail {

/// Matrix of x acting on C^1(g-, W) in the Complex's coordinates.
inline Mat rho_matrix(const cochain::Complex& cx, const Vec& x) {
    std::size_t n = cx.dim(1);
    Mat m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, Rational(0));
        e[j] = Rational(1);
        auto col = cx.to_vector(cochain::rho_g0(x, cx.from_vector<Rational>(1, e)));
        if (!col) throw std::logic_error("rho_matrix: image left the module");
        for (std::size_t i = 0; i < n; ++i) m(i, j) = (*col)[i];
    }
    return m;
}

/// Kernel of rho(x) on positive-degree cochains, as full cochain vectors.
inline std::vector<Vec> positive_zero_weight(const cochain::Complex& cx, const Vec& x) {
    Mat m = rho_matrix(cx, x);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < cx.dim(1); ++i)
        if (cx.degrees(1)[i] > 0) idx.push_back(i);
    std::vector<std::size_t> all(m.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<Vec> out;
    for (auto& k : kernel(m.submatrix(all, idx))) {
        Vec v(cx.dim(1), Rational(0));
        for (std::size_t t = 0; t < idx.size(); ++t) v[idx[t]] = k[t];
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

inline Vec h54() {
    Vec h(8, Rational(0));
    h[sl3::H1] = Rational(5);
    h[sl3::H2] = Rational(4);
    return h;
}

inline std::vector<CheckLine> cayley_model_checks() {
    const auto& g = sl3::algebra();
    std::vector<CheckLine> out;
    std::vector<Mat> h{g.ad(sl3::E0), g.ad(sl3::E1), g.ad(sl3::E2) + g.R({-1, 1}), g.ad_of(h54())};
    auto br = derived_brackets(h);
    out.push_back({"closure", br.has_value(), br ? "4-dim span closed under commutator" : "span not closed"});
    if (br) {
        auto e12 = (*br)[1][2];
        out.push_back({"bracket_e1_e2R", e12 == Vec{Rational(-1), Rational(0), Rational(0), Rational(0)},
                       "[ad e1, ad e2 + R(-1,1)] = -ad e0"});
    }
    bool ann = cochain::rho_g0(h54(), cochain::xi_R()).is_zero();
    out.push_back({"annihilates_xiR", ann, "rho(5H1+4H2) xi^R = 0"});

    cochain::Complex cr(cochain::module_R()), cs(cochain::module_S()), ca(cochain::module_adjoint());
    auto zr = detail::positive_zero_weight(cr, h54());
    auto xr = cr.to_vector(cochain::xi_R());
    bool r_ok = zr.size() == 1 && xr && in_span(zr, *xr);
    out.push_back({"zero_weight_R", r_ok, "dim " + std::to_string(zr.size()) + ", spanned by xi^R"});
    auto zs = detail::positive_zero_weight(cs, h54());
    out.push_back({"zero_weight_S", zs.empty(), "dim " + std::to_string(zs.size())});
    auto za = detail::positive_zero_weight(ca, h54());
    out.push_back({"zero_weight_g", za.empty(), "dim " + std::to_string(za.size())});
    return out;
}

// ---------------------------------------------------------------------------
// Tanaka prolongation of g- + g0'

/// Dimensions of the graded components of degree 1, 2, ... of the prolongation of g- + span(g0),
/// with g0 given as sl3 vectors in span{H1, H2}. Stops at the first zero component or after max_degree.
inline std::vector<std::size_t> tanaka_prolongation(const std::vector<Vec>& g0, int max_degree = 8) {
    const auto& g = sl3::algebra();
    for (auto& x : g0)
        for (std::size_t i = 0; i < 8; ++i)
            if (i != sl3::H1 && i != sl3::H2 && !x[i].is_zero())
                throw std::invalid_argument("tanaka_prolongation: element outside g0");
    // g- basis: y = 0 (e0, level -2), 1 (e1, level -1), 2 (e2, level -1)
    const std::array<int, 3> ylev{-2, -1, -1};
    // basis of level -2 / -1 as sl3 indices
    const std::vector<std::size_t> lev2{sl3::E0}, lev1{sl3::E1, sl3::E2};

    // maps[k][b][y]: element b of level k >= 1 sends y to a vector at level k + ylev[y]
    std::map<int, std::vector<std::array<Vec, 3>>> maps;
    std::map<int, std::size_t> dims{{-2, 1}, {-1, 2}, {0, g0.size()}};
    auto dim_of = [&](int l) -> std::size_t { return l < -2 ? 0 : dims.at(l); };

    // [a, y] for a at level l (coordinates), y a g- basis index; returns vector at level l + ylev[y]
    auto act = [&](int l, const Vec& a, std::size_t y) -> Vec {
        int tl = l + ylev[y];
        Vec out(dim_of(tl), Rational(0));
        if (out.empty()) return out;
        if (l < 0) {
            const auto& src = l == -2 ? lev2 : lev1;
            Vec x(8, Rational(0));
            for (std::size_t i = 0; i < a.size(); ++i) x[src[i]] = a[i];
            auto b = g.bracket(x, sl3::basis_vector(cochain::kGm[y]));
            const auto& dst = tl == -2 ? lev2 : lev1;
            for (std::size_t i = 0; i < dst.size(); ++i) out[i] = b[dst[i]];
            return out;
        }
        if (l == 0) {
            Vec x(8, Rational(0));
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t t = 0; t < 8; ++t) x[t] += a[i] * g0[i][t];
            auto b = g.bracket(x, sl3::basis_vector(cochain::kGm[y]));
            const auto& dst = tl == -2 ? lev2 : lev1;
            for (std::size_t i = 0; i < dst.size(); ++i) out[i] = b[dst[i]];
            return out;
        }
        const auto& m = maps.at(l);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero())
                for (std::size_t t = 0; t < out.size(); ++t) out[t] += a[i] * m[i][y][t];
        return out;
    };

    std::vector<std::size_t> result;
    for (int k = 1; k <= max_degree; ++k) {
        std::array<std::size_t, 3> sz{dim_of(k - 2), dim_of(k - 1), dim_of(k - 1)};
        std::size_t n = sz[0] + sz[1] + sz[2];
        auto split = [&](const Vec& u) {
            std::array<Vec, 3> parts;
            std::size_t off = 0;
            for (std::size_t y = 0; y < 3; ++y) {
                parts[y].assign(u.begin() + off, u.begin() + off + sz[y]);
                off += sz[y];
            }
            return parts;
        };
        // residual of u([x,y]) = [u(x), y] - [u(y), x] over the three pairs
        auto residual = [&](const Vec& u) {
            auto p = split(u);
            Vec r;
            const std::array<std::pair<std::size_t, std::size_t>, 3> pairs{{{1, 2}, {0, 1}, {0, 2}}};
            for (auto [x, y] : pairs) {
                Vec lhs = act(k + ylev[x], p[x], y);
                Vec rhs = act(k + ylev[y], p[y], x);
                for (std::size_t t = 0; t < lhs.size(); ++t) lhs[t] -= rhs[t];
                if (x == 1 && y == 2) {  // [e1, e2] = -e0
                    for (std::size_t t = 0; t < lhs.size(); ++t) lhs[t] += p[0][t];
                }
                r.insert(r.end(), lhs.begin(), lhs.end());
            }
            return r;
        };
        if (n == 0) break;
        std::size_t rows = residual(Vec(n, Rational(0))).size();
        Mat m(rows, n);
        for (std::size_t j = 0; j < n; ++j) {
            Vec e(n, Rational(0));
            e[j] = Rational(1);
            auto col = residual(e);
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = col[i];
        }
        auto ker = kernel(m);
        if (ker.empty()) break;
        std::vector<std::array<Vec, 3>> level;
        for (auto& u : ker) level.push_back(split(u));
        maps[k] = std::move(level);
        dims[k] = ker.size();
        result.push_back(ker.size());
    }
    return result;
}

// ---------------------------------------------------------------------------
// II0 spectrum

struct SpectrumCheck {
    bool factors = false;
    Rational trace, trace_sq, expected_trace_sq;
    Poly char_poly;
};

inline const std::vector<Rational>& ii0_eigenvalues() {
    static const std::vector<Rational> v{Rational(108, 5), Rational(72, 5), Rational(36, 5), Rational(0),
                                         Rational(0),      Rational(-36, 5), Rational(-72, 5), Rational(-108, 5)};
    return v;
}

inline SpectrumCheck ii0_spectrum() {
    Mat z0 = embedding_matrices(CaseId::II0)[0];
    SpectrumCheck s;
    s.char_poly = char_poly(z0);
    Poly expect = Poly::monomial(s.char_poly.ring(), {0}, Rational(1));
    Poly t = Poly::monomial(s.char_poly.ring(), {1}, Rational(1));
    for (auto& r : ii0_eigenvalues()) expect = expect * (t - Poly(s.char_poly.ring(), r));
    s.factors = s.char_poly == expect;
    s.trace = z0.trace();
    s.trace_sq = (z0 * z0).trace();
    for (auto& r : ii0_eigenvalues()) s.expected_trace_sq += r * r;
    return s;
}

// ---------------------------------------------------------------------------
// dossier

inline json brackets_json(const CaseSpec& c, const RBrackets& b) {
    json out = json::array();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            json coeffs = json::object();
            for (std::size_t k = 0; k < b.size(); ++k)
                if (!b[i][j][k].is_zero()) coeffs[c.basis[k]] = b[i][j][k].exact();
            out.push_back(json{{"pair", {c.basis[i], c.basis[j]}}, {"value", coeffs}});
        }
    return out;
}

inline json report_json(const EmbeddingReport& r, bool with_residuals) {
    json j{{"variant", r.variant}, {"so", r.so}, {"flat", r.flat}, {"symbol", r.symbol}, {"notes", r.notes}};
    if (with_residuals) {
        json res = json::array();
        for (auto& x : r.residuals) res.push_back(json{{"where", x.where}, {"matrix", to_json(x.value)}});
        j["residuals"] = res;
    }
    return j;
}

inline json dossier(CaseId id, const Params& given = {}, bool with_matrices = true) {
    const auto& c = spec(id);
    Params p = resolve_params(c, given);
    json params = json::object();
    for (auto& n : c.params) params[n] = p.at(n).exact();
    auto emb = embedding(id, given);
    auto alg = invariants(eval(c.effective().gamma, p));
    json j{{"case", c.name},
           {"parameters", params},
           {"excluded", c.excluded},
           {"basis", c.basis},
           {"brackets", brackets_json(c, alg.c)},
           {"equations", c.equation_text},
           {"corrections", c.corrections},
           {"embedding_checks", json::array()},
           {"osculating_dims", osculating_filtration(id, given)},
           {"invariants",
            {{"jacobi", alg.jacobi},
             {"killing_signature", {alg.killing_signature.positive, alg.killing_signature.negative, alg.killing_signature.zero}},
             {"derived_dim", alg.derived_basis.size()},
             {"derived_abelian", alg.derived_abelian}}}};
    j["embedding_checks"].push_back(report_json(emb.verbatim, with_matrices));
    if (emb.corrected) j["embedding_checks"].push_back(report_json(*emb.corrected, with_matrices));
    if (with_matrices) {
        json m = json::object();
        auto phi = eval(c.effective().phi, p);
        for (std::size_t i = 0; i < phi.size(); ++i) m[c.basis[i]] = to_json(phi[i]);
        j["embedding"] = m;
    }
    return j;
}

}  // namespace sl3ext::casebook

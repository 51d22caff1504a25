#pragma once

#include "sl3ext/algebra/ideal.hpp"
#include "sl3ext/algebra/json.hpp"
#include "sl3ext/algebra/poly.hpp"
#include "sl3ext/cochain/cochain.hpp"
#include "sl3ext/sl3/sl3.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl3ext::structeq {

using cochain::Cochain;
using PolyMat = Matrix<Poly>;

enum class Branch { BothNonzero, ROnly };

inline std::string branch_name(Branch b) { return b == Branch::BothNonzero ? "both_nonzero" : "R_only"; }

/// Parameter ring of the transitive data; "t" is the normalization parameter.
inline const RingPtr& ring() {
    static const RingPtr r = make_ring({"P1",  "P2",  "p1",  "p2",  "Q11", "Q12", "Q21", "Q22", "U1",  "U2",  "u11", "u12",
                                        "u21", "u22", "V1",  "V2",  "v11", "v12", "v21", "v22", "W1",  "W2",  "w1",  "w2",
                                        "zeta", "hR1", "hR2", "hR3", "hR4", "hR5", "hS1", "hS2", "hS3", "hS4", "hS5", "t"});
    return r;
}
inline Poly var(std::string_view n) { return Poly::var(ring(), n); }
inline Poly cst(const Rational& c) { return Poly(ring(), c); }
inline Poly cst(long n, long d = 1) { return Poly(ring(), Rational(n, d)); }

/// Grading degree at which a parameter first enters.
inline int param_degree(const std::string& n) {
    if (n == "t") return 0;
    if (n == "zeta") return 4;
    if (n.size() == 3 && n[0] == 'h') return n[2] - '0';
    switch (n[0]) {
        case 'P': case 'p': case 'U': case 'u': return 1;
        case 'Q': case 'V': case 'v': return 2;
        case 'W': case 'w': return 3;
    }
    throw std::invalid_argument("param_degree: " + n);
}

inline PolyMat liftp(const sl3::Mat& m) { return lift<Poly>(m); }
inline PolyMat times(const sl3::Mat& m, const Poly& p) { return liftp(m).scale(p); }
inline PolyMat subst(const PolyMat& m, std::string_view v, const Poly& val) {
    return m.map([&](const Poly& x) { return x.involves(ring()->index(v)) ? x.substitute(v, val) : x; });
}

// ---------------------------------------------------------------------------
// chi shapes

struct ShapeTerm {
    sl3::Label label;
    std::size_t slot;  // 0, 1, 2 for e0*, e1*, e2*
    Rational coef;
};

/// Unit shape of chi_p (family 'R' or 'S'), i.e. the bracket multiplying D^{p-1} h_1.
inline const std::vector<ShapeTerm>& shape_terms(char family, int p) {
    using V = std::vector<ShapeTerm>;
    static const std::array<V, 5> r{V{{{-1, 1}, 2, Rational(1)}},
                                    V{{{0, 1}, 2, Rational(-3, 4)}, {{-1, 1}, 0, Rational(-1, 4)}},
                                    V{{{1, 1}, 2, Rational(1, 2)}, {{0, 1}, 0, Rational(1, 4)}},
                                    V{{{2, 1}, 2, Rational(-1, 4)}, {{1, 1}, 0, Rational(-1, 4)}},
                                    V{{{2, 1}, 0, Rational(1, 4)}}};
    static const std::array<V, 5> s{V{{{1, -1}, 1, Rational(1)}},
                                    V{{{1, 0}, 1, Rational(-3, 4)}, {{1, -1}, 0, Rational(1, 4)}},
                                    V{{{1, 1}, 1, Rational(1, 2)}, {{1, 0}, 0, Rational(-1, 4)}},
                                    V{{{1, 2}, 1, Rational(-1, 4)}, {{1, 1}, 0, Rational(1, 4)}},
                                    V{{{1, 2}, 0, Rational(-1, 4)}}};
    if (p < 1 || p > 5) throw std::out_of_range("shape_terms: p must be 1..5");
    if (family == 'R') return r[p - 1];
    if (family == 'S') return s[p - 1];
    throw std::invalid_argument("shape_terms: family must be R or S");
}

template <class T>
Cochain<T> shape_cochain(char family, int p, const T& scale) {
    const auto& g = sl3::algebra();
    auto c = Cochain<T>::zero(1);
    for (auto& t : shape_terms(family, p)) {
        const sl3::Mat& m = family == 'R' ? g.R(t.label) : g.S(t.label);
        c.values[t.slot] += lift<T>(m).scale(T(t.coef) * scale);
    }
    return c;
}

/// rho(check e_1)^{p-1} xi_1^R = c_p^{-1} chi_p^R with these c_p (and mirrored for S with check e_2).
inline const std::array<Rational, 5>& proportionality_constants() {
    static const std::array<Rational, 5> c{Rational(1), Rational(-1, 4), Rational(1, 24), Rational(-1, 144), Rational(1, 576)};
    return c;
}

/// h_p (degree tables) = kappa_p * D^{p-1} h_1: the coefficient of the e0* term of the R shape.
inline const std::array<Rational, 5>& h_scale() {
    static const std::array<Rational, 5> k{Rational(1), Rational(-1, 4), Rational(1, 4), Rational(-1, 4), Rational(1, 4)};
    return k;
}

inline const cochain::Complex& so_complex() {
    static const cochain::Complex c(cochain::module_so());
    return c;
}
inline const cochain::Complex& adjoint_complex() {
    static const cochain::Complex c(cochain::module_adjoint());
    return c;
}

struct ShapeCheck {
    char family;
    int p;
    bool dstar_zero = false;
    std::optional<Rational> ratio;  // shape = ratio * rho(check e)^{p-1} xi
    Rational expected;
    bool ok() const { return dstar_zero && ratio && *ratio == expected; }
};

inline std::vector<ShapeCheck> verify_shapes() {
    std::vector<ShapeCheck> out;
    for (char fam : {'R', 'S'}) {
        auto x = sl3::basis_vector(fam == 'R' ? sl3::CE1 : sl3::CE2);
        auto iter = fam == 'R' ? cochain::xi_R() : cochain::xi_S();
        for (int p = 1; p <= 5; ++p) {
            ShapeCheck c{fam, p, false, std::nullopt, proportionality_constants()[p - 1]};
            auto sh = shape_cochain<Rational>(fam, p, Rational(1));
            if (auto v = so_complex().to_vector(sh)) {
                c.dstar_zero = true;
                for (auto& e : so_complex().Dstar(0).apply(*v)) c.dstar_zero = c.dstar_zero && e.is_zero();
            }
            c.ratio = cochain::proportionality(sh, iter);
            out.push_back(c);
            iter = cochain::rho_action(x, iter);
        }
    }
    return out;
}

/// chi = sum_p D^{p-1}h^R shape_p^R + D^{p-1}h^S shape_p^S with formal scalars dR[p-1], dS[p-1].
inline Cochain<Poly> chi_from_h(const std::array<Poly, 5>& dR, const std::array<Poly, 5>& dS) {
    static const std::vector<ShapeCheck> checks = verify_shapes();
    for (auto& c : checks)
        if (!c.ok())
            throw std::logic_error(std::string("chi_from_h: shape check failed for family ") + c.family + " degree " + std::to_string(c.p));
    auto chi = Cochain<Poly>::zero(1);
    for (int p = 1; p <= 5; ++p) {
        if (!dR[p - 1].is_zero()) chi = chi + shape_cochain<Poly>('R', p, dR[p - 1]);
        if (!dS[p - 1].is_zero()) chi = chi + shape_cochain<Poly>('S', p, dS[p - 1]);
    }
    return chi;
}

// ---------------------------------------------------------------------------
// transitive data

inline constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

struct TransitiveData {
    Branch branch = Branch::BothNonzero;
    std::array<PolyMat, 3> psi;                // psi(e_i), including psi_0 = ad e_i
    Cochain<Poly> chi;                         // values on e0, e1, e2
    std::array<std::array<Poly, 3>, 3> gamma;  // gamma[pair][k] = coefficient of e_k in gamma(e_a, e_b)

    std::array<PolyMat, 3> phi() const { return {psi[0] + chi.values[0], psi[1] + chi.values[1], psi[2] + chi.values[2]}; }

    TransitiveData substituted(std::string_view v, const Poly& val) const {
        TransitiveData d = *this;
        std::size_t idx = ring()->index(v);
        auto s = [&](const Poly& x) { return x.involves(idx) ? x.substitute(idx, val) : x; };
        for (auto& m : d.psi) m = m.map(s);
        for (auto& m : d.chi.values) m = m.map(s);
        for (auto& row : d.gamma)
            for (auto& x : row) x = s(x);
        return d;
    }
};

inline TransitiveData build_transitive_data(Branch branch, bool gauge_u = true) {
    using namespace sl3;
    const auto& g = algebra();
    auto A = [&](std::size_t i, const char* v) { return times(g.ad(i), var(v)); };
    TransitiveData d;
    d.branch = branch;
    d.psi[0] = liftp(g.ad(E0)) + A(H1, "V1") + A(H2, "V2") + A(CE1, "W1") + A(CE2, "W2") + A(CE0, "zeta");
    if (!gauge_u) d.psi[0] = d.psi[0] + A(E1, "U1") + A(E2, "U2");
    d.psi[1] = liftp(g.ad(E1)) + A(H1, "u11") + A(H2, "u21") + A(CE1, "v11") + A(CE2, "v21") + A(CE0, "w1");
    d.psi[2] = liftp(g.ad(E2)) + A(H1, "u12") + A(H2, "u22") + A(CE1, "v12") + A(CE2, "v22") + A(CE0, "w2");
    std::array<Poly, 5> dR, dS;
    dR[0] = cst(1);
    dS[0] = branch == Branch::BothNonzero ? cst(1) : cst(0);
    for (int p = 2; p <= 5; ++p) {
        dR[p - 1] = var("hR" + std::to_string(p)) / h_scale()[p - 1];
        dS[p - 1] = branch == Branch::BothNonzero ? var("hS" + std::to_string(p)) / h_scale()[p - 1] : cst(0);
    }
    d.chi = chi_from_h(dR, dS);
    d.gamma[0] = {var("P1"), var("Q11"), var("Q21")};
    d.gamma[1] = {var("P2"), var("Q12"), var("Q22")};
    d.gamma[2] = {cst(-1), var("p1"), var("p2")};
    return d;
}

// ---------------------------------------------------------------------------
// residuals

struct Equation {
    std::string family;  // "psi" (ad(g) part), "chi" (R/S part) or "gauge"
    std::string where;   // e.g. "e0^e1 : R(-1,1)"
    int degree = 0;
    Poly value;
};

struct DegreeResidual {
    int n = 0;
    std::vector<Equation> equations;  // pair-major, then so coordinate; gauge last
    std::vector<Equation> family(const std::string& f) const {
        std::vector<Equation> out;
        for (auto& e : equations)
            if (e.family == f) out.push_back(e);
        return out;
    }
    bool vanishes() const {
        for (auto& e : equations)
            if (!e.value.is_zero()) return false;
        return true;
    }
};

/// so(V,kappa) coordinates of [phi(e_a), phi(e_b)] - phi(gamma(e_a, e_b)) for each pair.
inline std::array<std::vector<Poly>, 3> bracket_residual(const TransitiveData& d) {
    const auto& g = sl3::algebra();
    auto phi = d.phi();
    std::array<std::vector<Poly>, 3> out;
    for (std::size_t pi = 0; pi < 3; ++pi) {
        auto [a, b] = kPairs[pi];
        PolyMat m = commutator(phi[a], phi[b]);
        for (std::size_t k = 0; k < 3; ++k)
            if (!d.gamma[pi][k].is_zero()) m -= PolyMat(phi[k]).scale(d.gamma[pi][k]);
        auto c = g.so_coords(m);
        if (!c) throw std::logic_error("bracket_residual: residual left so(V,kappa)");
        out[pi] = std::move(*c);
    }
    return out;
}

/// d*_0 of the positive part of psi, in adjoint coordinates.
inline std::vector<Poly> gauge_residual(const TransitiveData& d) {
    const auto& g = sl3::algebra();
    auto c = Cochain<Poly>::zero(1);
    for (std::size_t i = 0; i < 3; ++i) c.values[i] = d.psi[i] - liftp(g.ad(cochain::kGm[i]));
    auto v = adjoint_complex().to_vector(c);
    if (!v) throw std::logic_error("gauge_residual: psi is not g-valued");
    return apply_mixed(adjoint_complex().Dstar(0), *v);
}

inline std::map<int, DegreeResidual> fundamental_residuals(const TransitiveData& d) {
    const auto& g = sl3::algebra();
    std::map<int, DegreeResidual> out;
    auto res = bracket_residual(d);
    for (std::size_t pi = 0; pi < 3; ++pi) {
        auto [a, b] = kPairs[pi];
        for (std::size_t k = 0; k < sl3::Sl3::kSoDim; ++k) {
            if (res[pi][k].is_zero()) continue;
            int n = g.so_degrees()[k] - cochain::kGmDeg[a] - cochain::kGmDeg[b];
            std::string where = std::string(cochain::kGmName[a]) + "^" + cochain::kGmName[b] + " : " + g.so_names()[k];
            out[n].n = n;
            out[n].equations.push_back({k < 8 ? "psi" : "chi", where, n, res[pi][k]});
        }
    }
    auto ga = gauge_residual(d);
    for (std::size_t i = 0; i < 8; ++i) {
        if (ga[i].is_zero()) continue;
        int n = sl3::kDegree[i];
        out[n].n = n;
        out[n].equations.push_back({"gauge", std::string("d* : ") + sl3::kName[i], n, ga[i]});
    }
    return out;
}

inline DegreeResidual fundamental_residual(const TransitiveData& d, int n) {
    if (n < 1 || n > 6) throw std::out_of_range("fundamental_residual: degree must be 1..6");
    auto all = fundamental_residuals(d);
    auto it = all.find(n);
    if (it == all.end()) return DegreeResidual{n, {}};
    return it->second;
}

// ---------------------------------------------------------------------------
// degree-by-degree elimination

struct Relation {
    std::string unknown;
    Poly value;
};

struct DegreeSolution {
    int n = 0;
    std::vector<std::string> unknowns;
    std::vector<Relation> solved;  // in elimination order, values as at the end of this degree
    std::vector<Poly> leftovers;   // unsolved equations, raw
};

inline const std::map<int, std::vector<std::string>>& schedule() {
    static const std::map<int, std::vector<std::string>> s{
        {1, {"u11", "u12", "u21", "u22", "p1", "p2"}},
        {2, {"hR2", "hS2", "V1", "V2", "v11", "v12", "v21", "v22", "Q22"}},
        {3, {"hR3", "hS3", "W1", "W2", "w1", "w2", "Q11"}},
        {4, {"hR4", "hS4", "zeta"}},
        {5, {"hR5", "hS5"}},
        {6, {}}};
    return s;
}

inline Poly apply_subs(Poly x, const std::map<std::string, Poly>& subs) {
    for (auto& [k, v] : subs) {
        std::size_t i = ring()->index(k);
        if (x.involves(i)) x = x.substitute(i, v);
    }
    return x;
}

struct BranchSolution {
    Branch branch = Branch::BothNonzero;
    TransitiveData data;
    std::map<std::string, Poly> subs;  // final values of every solved unknown (and the gauge)
    std::vector<DegreeSolution> degrees;

    Poly value(const std::string& name) const {
        auto it = subs.find(name);
        return it == subs.end() ? var(name) : it->second;
    }
    Poly reduce(const Poly& p) const { return apply_subs(p, subs); }
    std::vector<Poly> leftovers(int n) const {
        for (auto& d : degrees)
            if (d.n == n) return d.leftovers;
        return {};
    }
    std::vector<Poly> all_leftovers() const {
        std::vector<Poly> out;
        for (auto& d : degrees) out.insert(out.end(), d.leftovers.begin(), d.leftovers.end());
        return out;
    }
    /// phi(e_i) and gamma with every solved relation substituted.
    TransitiveData solved_data() const {
        TransitiveData d = data;
        for (auto& [k, v] : subs) d = d.substituted(k, v);
        return d;
    }
    /// Impose further relations (a case split) on the solution, its leftovers and its data.
    BranchSolution specialized(const std::map<std::string, Poly>& extra) const {
        BranchSolution s = *this;
        for (auto& [k, v] : extra) {
            std::size_t i = ring()->index(k);
            for (auto& [n, x] : s.subs)
                if (x.involves(i)) x = x.substitute(i, v);
            for (auto& d : s.degrees) {
                for (auto& r : d.solved)
                    if (r.value.involves(i)) r.value = r.value.substitute(i, v);
                std::vector<Poly> left;
                for (auto& l : d.leftovers) {
                    Poly x = l.involves(i) ? l.substitute(i, v) : l;
                    if (!x.is_zero()) left.push_back(std::move(x));
                }
                d.leftovers = std::move(left);
            }
            s.subs[k] = v;
        }
        return s;
    }

    json export_json() const {
        json out;
        out["branch"] = branch_name(branch);
        json degs = json::array();
        for (auto& d : degrees) {
            json solved = json::array();
            for (auto& r : d.solved) solved.push_back(json{{"unknown", r.unknown}, {"value", to_json(value(r.unknown))}});
            json left = json::array();
            for (auto& l : d.leftovers) left.push_back(to_json(l));
            degs.push_back(json{{"degree", d.n}, {"unknowns", d.unknowns}, {"solved", solved}, {"leftovers", left}});
        }
        out["degrees"] = degs;
        return out;
    }
};

inline BranchSolution solve_degrees(Branch branch) {
    BranchSolution s;
    s.branch = branch;
    s.data = build_transitive_data(branch);
    s.subs = {{"U1", cst(0)}, {"U2", cst(0)}};
    auto res = fundamental_residuals(s.data);
    for (int n = 1; n <= 6; ++n) {
        std::vector<Poly> eqs;
        if (auto it = res.find(n); it != res.end())
            for (auto& e : it->second.equations) eqs.push_back(apply_subs(e.value, s.subs));
        std::vector<std::string> unk;
        for (auto& u : schedule().at(n)) {
            if (branch == Branch::ROnly && u.rfind("hS", 0) == 0) continue;
            if (!s.subs.count(u)) unk.push_back(u);
        }
        auto el = eliminate(eqs, unk);
        for (auto& [k, v] : s.subs) v = apply_subs(v, el.solution);
        DegreeSolution ds;
        ds.n = n;
        ds.unknowns = unk;
        for (auto& u : el.order) {
            s.subs[u] = el.solution.at(u);
            ds.solved.push_back({u, el.solution.at(u)});
        }
        ds.leftovers = el.leftovers;
        s.degrees.push_back(std::move(ds));
    }
    // refresh recorded values with later substitutions
    for (auto& d : s.degrees)
        for (auto& r : d.solved) r.value = s.subs.at(r.unknown);
    return s;
}

// ---------------------------------------------------------------------------
// printed tables and branch equations

struct TableCheck {
    std::string name;
    std::string printed;   // printed closed form
    Poly expected;         // printed form as a polynomial
    Poly derived;          // engine value
    std::string mode;      // "exact" or "ideal"
    bool holds = false;
    int certificate_degree = -1;
    bool flagged = false;  // known print mismatch, reported instead of failed
    std::string note;
};

inline Poly C_poly() { return cst(12) - var("P1") * var("P2") / Rational(3); }

inline TableCheck exact_check(std::string name, std::string printed, const Poly& expected, const Poly& derived) {
    TableCheck c;
    c.name = std::move(name);
    c.printed = std::move(printed);
    c.expected = expected;
    c.derived = derived;
    c.mode = "exact";
    c.holds = (expected - derived).is_zero();
    return c;
}

inline TableCheck ideal_check(std::string name, std::string printed, const Poly& expected, const Poly& derived,
                              const std::vector<Poly>& gens, int max_degree = 1) {
    TableCheck c;
    c.name = std::move(name);
    c.printed = std::move(printed);
    c.expected = expected;
    c.derived = derived;
    c.mode = "ideal";
    auto cert = ideal_certificate(expected - derived, gens, {"P1", "P2", "Q12", "Q21"}, max_degree);
    c.holds = cert.has_value();
    if (cert) c.certificate_degree = cert->degree;
    return c;
}

inline std::vector<Poly> concat(std::vector<Poly> a, const std::vector<Poly>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Printed tables of the non-vanishing branch against the derived solution.
inline std::vector<TableCheck> both_nonzero_tables(const BranchSolution& s) {
    auto P1 = var("P1"), P2 = var("P2"), Q12 = var("Q12"), Q21 = var("Q21");
    Poly C = C_poly();
    auto g3 = s.leftovers(3);
    auto g34 = concat(g3, s.leftovers(4));
    std::vector<TableCheck> out;
    out.push_back(exact_check("U1", "0 (gauge)", cst(0), s.value("U1")));
    out.push_back(exact_check("U2", "0 (gauge)", cst(0), s.value("U2")));
    out.push_back(exact_check("p1", "P2", P2, s.value("p1")));
    out.push_back(exact_check("p2", "-P1", -P1, s.value("p2")));
    auto p1 = P2, p2 = -P1;
    out.push_back(exact_check("u11", "P1/3", P1 / Rational(3), s.value("u11")));
    out.push_back(exact_check("u12", "(P2+p1)/3", (P2 + p1) / Rational(3), s.value("u12")));
    out.push_back(exact_check("u21", "(P1-p2)/3", (P1 - p2) / Rational(3), s.value("u21")));
    out.push_back(exact_check("u22", "P2/3", P2 / Rational(3), s.value("u22")));
    out.push_back(exact_check("h2R", "p2/2 = -P1/2", p2 / Rational(2), s.value("hR2")));
    out.push_back(exact_check("h2S", "-p1/2 = -P2/2", -p1 / Rational(2), s.value("hS2")));
    out.push_back(exact_check("Q11", "3C/5", C * cst(3, 5), s.value("Q11")));
    out.push_back(exact_check("Q22", "-3C/5", -C * cst(3, 5), s.value("Q22")));
    out.push_back(exact_check("V1", "C/10", C / Rational(10), s.value("V1")));
    out.push_back(exact_check("V2", "-C/10", -C / Rational(10), s.value("V2")));
    out.push_back(exact_check("v11", "Q21", Q21, s.value("v11")));
    out.push_back(exact_check("v12", "-9C/10", C * cst(-9, 10), s.value("v12")));
    out.push_back(exact_check("v21", "-9C/10", C * cst(-9, 10), s.value("v21")));
    out.push_back(exact_check("v22", "-Q12", -Q12, s.value("v22")));
    out.push_back(exact_check("h3R", "P1^2 - Q21", P1 * P1 - Q21, s.value("hR3")));
    out.push_back(exact_check("h3S", "P2^2 + Q12", P2 * P2 + Q12, s.value("hS3")));
    out.push_back(ideal_check("W1", "P1(12 - C/5)", P1 * (cst(12) - C / Rational(5)), s.value("W1"), g3));
    out.push_back(ideal_check("W2", "P2(-12 + C/5)", P2 * (cst(-12) + C / Rational(5)), s.value("W2"), g3));
    out.push_back(ideal_check("w1", "P1(6 - C/10)", P1 * (cst(6) - C / Rational(10)), s.value("w1"), g3));
    out.push_back(ideal_check("w2", "P2(-6 + C/10)", P2 * (cst(-6) + C / Rational(10)), s.value("w2"), g3));
    out.push_back(ideal_check("eqsPQ.1", "P1 Q11 + P2 Q21 = 0", cst(0), P1 * s.value("Q11") + P2 * Q21, g3));
    out.push_back(ideal_check("eqsPQ.2", "P1 Q12 + P2 Q22 = 0", cst(0), P1 * Q12 + P2 * s.value("Q22"), g3));
    out.push_back(exact_check("h4R", "P1(-2P1^2 + 5Q21)", P1 * (cst(-2) * P1 * P1 + cst(5) * Q21), s.value("hR4")));
    out.push_back(exact_check("h4S", "P2(-2P2^2 - 5Q12)", P2 * (cst(-2) * P2 * P2 - cst(5) * Q12), s.value("hS4")));
    out.push_back(ideal_check("eqQ21", "Q21(3C/5 + 12) + P1^2(C/5 - 24) = 0", cst(0),
                              Q21 * (C * cst(3, 5) + cst(12)) + P1 * P1 * (C / Rational(5) - cst(24)), g34));
    out.push_back(ideal_check("eqQ12", "Q12(3C/5 + 12) - P2^2(C/5 - 24) = 0", cst(0),
                              Q12 * (C * cst(3, 5) + cst(12)) - P2 * P2 * (C / Rational(5) - cst(24)), g34));
    {
        Poly printed = P1 * P2 * (cst(33) - C * cst(2, 3)) + Q12 * Q21 + (C * cst(9, 10)).pow(2);
        auto c = ideal_check("zeta", "P1 P2 (33 - 2C/3) + Q12 Q21 + (9C/10)^2", printed, s.value("zeta"), g34);
        if (!c.holds) {
            Poly fixed = P1 * P2 * (cst(33) - C * cst(2, 5)) + Q12 * Q21 + (C * cst(9, 10)).pow(2);
            auto f = ideal_check("zeta", "", fixed, s.value("zeta"), g34);
            c.note = f.holds ? "printed coefficient 2/3 of C fails; 2/5 holds (certificate degree " +
                                   std::to_string(f.certificate_degree) + ")"
                             : "neither 2/3 nor 2/5 reproduces the derived value";
        }
        out.push_back(c);
    }
    out.push_back(ideal_check("P1(C-15)(C-60)", "P1(C-15)(C-60) = 0", cst(0), P1 * (C - cst(15)) * (C - cst(60)), g34));
    out.push_back(ideal_check("P2(C-15)(C-60)", "P2(C-15)(C-60) = 0", cst(0), P2 * (C - cst(15)) * (C - cst(60)), g34));
    out.push_back(exact_check("h5R", "-2(-2P1^4 + 8P1^2 Q21 - 3Q21^2)",
                              cst(-2) * (cst(-2) * P1.pow(4) + cst(8) * P1 * P1 * Q21 - cst(3) * Q21 * Q21), s.value("hR5")));
    {
        auto c = exact_check("h5S", "-2(2P2^4 + 8P2^2 Q12 + 3Q12^2)",
                             cst(-2) * (cst(2) * P2.pow(4) + cst(8) * P2 * P2 * Q12 + cst(3) * Q12 * Q12), s.value("hS5"));
        if (!c.holds && (c.expected + c.derived).is_zero()) {
            c.flagged = true;
            c.note = "derived value is the negative of the print";
        }
        out.push_back(c);
    }
    return out;
}

/// Degree 5 and 6 leftovers of the non-vanishing branch lie in the ideal of the degree 3-4 ones.
inline std::vector<TableCheck> higher_degree_checks(const BranchSolution& s, int max_degree = 3) {
    auto g34 = concat(s.leftovers(3), s.leftovers(4));
    std::vector<TableCheck> out;
    for (int n : {5, 6}) {
        auto left = s.leftovers(n);
        for (std::size_t i = 0; i < left.size(); ++i)
            out.push_back(ideal_check("degree " + std::to_string(n) + " leftover " + std::to_string(i + 1), "0", cst(0), left[i], g34, max_degree));
    }
    return out;
}

struct CaseTriple {
    std::string name;          // II0, II1, II2
    Rational C;
    Rational P1P2;
    std::map<std::string, Poly> relations;  // substitutions defining the case
    bool leftovers_vanish = false;
    bool q_unique = false;     // eqQ21/eqQ12 determine Q21, Q12 with the stated values
    Poly zeta;                 // derived zeta on the case
};

/// The three cases of the non-vanishing branch, checked by Laurent substitution in P1.
inline std::vector<CaseTriple> both_nonzero_cases(const BranchSolution& s) {
    auto P1 = var("P1"), P2 = var("P2");
    std::vector<CaseTriple> out;
    auto make = [&](std::string name, Rational c, Rational prod, std::map<std::string, Poly> rel) {
        CaseTriple t;
        t.name = std::move(name);
        t.C = c;
        t.P1P2 = prod;
        t.relations = std::move(rel);
        auto sp = s.specialized(t.relations);
        t.leftovers_vanish = sp.all_leftovers().empty();
        // Q21 = -P1^2 (C/5 - 24) / (3C/5 + 12) and the mirrored Q12
        Rational a = c * Rational(3, 5) + Rational(12);
        Rational b = c / Rational(5) - Rational(24);
        if (!a.is_zero()) {
            Poly q21 = -apply_subs(P1 * P1, t.relations) * cst(b / a);
            Poly q12 = apply_subs(P2 * P2, t.relations) * cst(b / a);
            t.q_unique = (q21 - t.relations.at("Q21")).is_zero() && (q12 - t.relations.at("Q12")).is_zero();
        }
        auto cc = apply_subs(C_poly(), t.relations);
        t.q_unique = t.q_unique && cc.is_constant() && cc.constant_value() == c;
        t.zeta = sp.value("zeta");
        out.push_back(std::move(t));
    };
    make("II0", Rational(12), Rational(0), {{"P1", cst(0)}, {"P2", cst(0)}, {"Q12", cst(0)}, {"Q21", cst(0)}});
    {
        Poly p2 = cst(-9) * P1.pow(-1);
        make("II1", Rational(15), Rational(-9), {{"P2", p2}, {"Q21", P1 * P1}, {"Q12", -(p2 * p2)}});
    }
    {
        Poly p2 = cst(-144) * P1.pow(-1);
        make("II2", Rational(60), Rational(-144), {{"P2", p2}, {"Q21", P1 * P1 / Rational(4)}, {"Q12", -(p2 * p2) / Rational(4)}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// vanishing-S branch

struct Subcase {
    std::string name;
    std::map<std::string, Poly> relations;
    BranchSolution solution;
};

struct ROnlyReport {
    std::vector<TableCheck> tables;
    std::vector<TableCheck> contradiction;  // P1^3 P2, P1 P2^3 in the ideal of the leftovers
    Subcase sub1, sub2, sub3;
    bool sub1_forces_q21 = false;       // P1 = 0: leftover reduces to a nonzero multiple of P2 Q21
    bool sub1_vanishing = false;        // then h4R = zeta = h5R = 0 and nothing is left
    bool sub2_forces_q12 = false;       // P2 = 0: leftover reduces to a nonzero multiple of P1 Q12
    TableCheck sub2_h4, sub2_h5;
    bool sub2_factorization = false;    // remaining leftovers are multiples of (P1^2-Q21)(P1^2-4Q21)
    bool sub3_zeta = false;             // zeta = Q12 Q21 before Q21 = 0
    bool sub3_h5 = false;               // h5R = 6 Q21^2 before Q21 = 0
    bool sub3_forces_q21 = false;
    bool sub3_vanishing = false;
};

/// True if every element of `ps` is a nonzero rational multiple of `target`.
inline bool all_multiples_of(const std::vector<Poly>& ps, const Poly& target) {
    if (ps.empty()) return false;
    for (auto& p : ps) {
        auto c = ideal_certificate(p, std::vector<Poly>{target}, {}, 0);
        if (!c) return false;
    }
    return true;
}

inline ROnlyReport analyse_r_only(const BranchSolution& s) {
    auto P1 = var("P1"), P2 = var("P2"), Q12 = var("Q12"), Q21 = var("Q21");
    ROnlyReport r;
    auto g34 = concat(s.leftovers(3), s.leftovers(4));
    r.tables.push_back(exact_check("Q11", "-P1 P2/5", -P1 * P2 / Rational(5), s.value("Q11")));
    r.tables.push_back(exact_check("Q22", "P1 P2/5", P1 * P2 / Rational(5), s.value("Q22")));
    r.tables.push_back(exact_check("h2R", "-P1/2", -P1 / Rational(2), s.value("hR2")));
    r.tables.push_back(exact_check("h3R", "P1^2 - Q21", P1 * P1 - Q21, s.value("hR3")));
    r.tables.push_back(exact_check("p1", "P2", P2, s.value("p1")));
    r.tables.push_back(exact_check("p2", "-P1", -P1, s.value("p2")));
    r.contradiction.push_back(ideal_check("P1^3 P2", "P1^3 P2 = 0", cst(0), P1.pow(3) * P2, g34));
    r.contradiction.push_back(ideal_check("P1 P2^3", "P1 P2^3 = 0", cst(0), P1 * P2.pow(3), g34));

    // subcase 1: P1 = 0, P2 != 0
    {
        auto a = s.specialized({{"P1", cst(0)}});
        auto l3 = a.leftovers(3);
        r.sub1_forces_q21 = all_multiples_of(l3, P2 * Q21);
        auto b = a.specialized({{"Q21", cst(0)}});
        r.sub1_vanishing = b.value("hR4").is_zero() && b.value("zeta").is_zero() && b.value("hR5").is_zero() &&
                           b.all_leftovers().empty();
        r.sub1 = {"P1 = 0", {{"P1", cst(0)}, {"Q21", cst(0)}}, b};
    }
    // subcase 2: P2 = 0, P1 != 0
    {
        auto a = s.specialized({{"P2", cst(0)}});
        r.sub2_forces_q12 = all_multiples_of(a.leftovers(3), P1 * Q12);
        auto b = a.specialized({{"Q12", cst(0)}});
        r.sub2_h4 = exact_check("h4R", "P1(5Q21 - 2P1^2)", P1 * (cst(5) * Q21 - cst(2) * P1 * P1), b.value("hR4"));
        r.sub2_h5 = exact_check("h5R", "4P1^4 - 16P1^2 Q21 + 6Q21^2",
                                cst(4) * P1.pow(4) - cst(16) * P1 * P1 * Q21 + cst(6) * Q21 * Q21, b.value("hR5"));
        Poly f = (P1 * P1 - Q21) * (P1 * P1 - cst(4) * Q21);
        auto rest = b.all_leftovers();
        bool ok = !rest.empty();
        for (auto& l : rest) ok = ok && ideal_certificate(l, std::vector<Poly>{f}, {"P1", "Q21"}, 2).has_value();
        r.sub2_factorization = ok;
        r.sub2 = {"P2 = 0", {{"P2", cst(0)}, {"Q12", cst(0)}}, b};
    }
    // subcase 3: P1 = P2 = 0
    {
        auto a = s.specialized({{"P1", cst(0)}, {"P2", cst(0)}});
        r.sub3_zeta = (a.value("zeta") - Q12 * Q21).is_zero();
        r.sub3_h5 = (a.value("hR5") - cst(6) * Q21 * Q21).is_zero();
        r.sub3_forces_q21 = all_multiples_of(a.leftovers(6), Q21 * Q21);
        auto b = a.specialized({{"Q21", cst(0)}});
        r.sub3_vanishing = b.value("hR4").is_zero() && b.value("zeta").is_zero() && b.value("hR5").is_zero() &&
                           b.all_leftovers().empty();
        r.sub3 = {"P1 = P2 = 0", {{"P1", cst(0)}, {"P2", cst(0)}, {"Q21", cst(0)}}, b};
    }
    return r;
}

// ---------------------------------------------------------------------------
// scaling action

/// diag(t^3, t^2, t, 1, 1, 1/t, 1/t^2, 1/t^3) on V.
inline PolyMat scaling_matrix(const Poly& t) {
    PolyMat d(8, 8);
    static constexpr std::array<int, 8> w{3, 2, 1, 0, 0, -1, -2, -3};
    for (std::size_t i = 0; i < 8; ++i) d(i, i) = w[i] == 0 ? cst(1) : t.pow(w[i]);
    return d;
}

struct ScalingCheck {
    std::string family;
    std::map<std::string, Poly> action;  // parameter -> transformed value
    bool holds = false;
};

/// Conjugating phi by the scaling matrix and rescaling Z_i by t^{(3,2,1)_i} must give phi at the
/// transformed parameters. Each action value may involve only its own parameter and t.
inline ScalingCheck check_scaling(const std::string& family, const TransitiveData& d, const std::map<std::string, Poly>& action) {
    auto t = var("t");
    PolyMat D = scaling_matrix(t), Dinv = scaling_matrix(t.pow(-1));
    auto rescale = [&](const Poly& x) {
        Poly y = x;
        for (auto& [k, v] : action) {
            std::size_t i = ring()->index(k);
            if (y.involves(i)) y = y.substitute(i, v);
        }
        return y;
    };
    auto phi = d.phi();
    bool ok = true;
    static constexpr std::array<int, 3> w{3, 2, 1};
    for (std::size_t i = 0; i < 3; ++i) {
        PolyMat lhs = (D * phi[i] * Dinv).scale(t.pow(w[i]));
        ok = ok && (lhs - phi[i].map(rescale)).is_zero();
    }
    return {family, action, ok};
}

}  // namespace sl3ext::structeq

#pragma once

#include "sl3ext/algebra/json.hpp"
#include "sl3ext/algebra/linalg.hpp"
#include "sl3ext/algebra/poly.hpp"
#include "sl3ext/algebra/quadratic.hpp"
#include "sl3ext/casebook/casebook.hpp"
#include "sl3ext/cochain/cochain.hpp"
#include "sl3ext/pdecheck/pdecheck.hpp"
#include "sl3ext/sl3/sl3.hpp"
#include "sl3ext/structeq/structeq.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sl3ext::report {

using casebook::CaseId;
using casebook::Params;
using sl3::Mat;

inline constexpr const char* kVersion = "1.0";

enum class Status { Pass, Fail, Skipped };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        default: return "skipped";
    }
}

struct CheckReport {
    std::string suite;
    std::string id;
    Status status = Status::Skipped;
    std::string expected;
    std::string actual;
    double elapsed_ms = 0;
    std::string anchor;
};

struct SuiteReport {
    std::string name;
    std::vector<CheckReport> checks;
};

/// Suites in dependency order.
inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> s{"algebra", "sl3", "cohomology", "structure", "classification", "casebook", "pde"};
    return s;
}

struct Options {
    std::vector<std::string> suites;  // empty: all, or casebook + pde when a case is given
    std::optional<CaseId> case_id;
    Params params;
    bool with_dossier_matrices = false;
};

struct RunReport {
    std::vector<SuiteReport> suites;
    std::optional<json> dossier;

    std::size_t count(Status s) const {
        std::size_t n = 0;
        for (auto& su : suites)
            for (auto& c : su.checks) n += c.status == s;
        return n;
    }
    bool ok() const { return count(Status::Fail) == 0; }

    json to_json(bool timing = true) const {
        json out;
        out["version"] = kVersion;
        json ss = json::array();
        for (auto& su : suites) {
            json cs = json::array();
            for (auto& c : su.checks) {
                json j{{"suite", c.suite}, {"id", c.id},         {"status", status_name(c.status)},
                       {"expected", c.expected}, {"actual", c.actual}, {"anchor", c.anchor}};
                if (timing) j["elapsed_ms"] = c.elapsed_ms;
                cs.push_back(std::move(j));
            }
            ss.push_back(json{{"name", su.name}, {"checks", std::move(cs)}});
        }
        out["suites"] = std::move(ss);
        out["summary"] = json{{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"skipped", count(Status::Skipped)}};
        if (dossier) out["dossier"] = *dossier;
        return out;
    }

    std::string text() const {
        std::ostringstream os;
        for (auto& su : suites) {
            os << "== " << su.name << "\n";
            for (auto& c : su.checks) {
                os << (c.status == Status::Pass ? "PASS " : c.status == Status::Fail ? "FAIL " : "SKIP ") << c.id;
                if (c.status == Status::Fail) os << "\n     expected: " << c.expected << "\n     actual:   " << c.actual;
                os << "\n";
            }
        }
        os << "summary: " << count(Status::Pass) << " pass, " << count(Status::Fail) << " fail, " << count(Status::Skipped)
           << " skipped\n";
        return os.str();
    }
};

/// Collects checks; each check's elapsed time runs from the previous record.
class Recorder {
public:
    explicit Recorder(std::string suite) : suite_(std::move(suite)), t0_(clock::now()) {}

    void add(std::string id, bool pass, std::string expected, std::string actual, std::string anchor) {
        auto now = clock::now();
        double ms = std::chrono::duration<double, std::milli>(now - t0_).count();
        t0_ = now;
        out_.push_back({suite_, std::move(id), pass ? Status::Pass : Status::Fail, std::move(expected), std::move(actual), ms,
                        std::move(anchor)});
    }
    void add(const casebook::CheckLine& l, std::string expected, std::string anchor) {
        add(l.id, l.pass, std::move(expected), l.pass ? (l.detail.empty() ? "as expected" : l.detail) : l.detail, std::move(anchor));
    }
    void restart() { t0_ = clock::now(); }

    SuiteReport finish() {
        std::stable_sort(out_.begin(), out_.end(), [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
        return {suite_, std::move(out_)};
    }

private:
    using clock = std::chrono::steady_clock;
    std::string suite_;
    clock::time_point t0_;
    std::vector<CheckReport> out_;
};

namespace detail {

inline std::string dims_str(const std::vector<std::size_t>& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

inline std::string sig_str(const Signature& s) {
    return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + "," + std::to_string(s.zero) + ")";
}

inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long> n(-9, 9), d(1, 5);
    return Rational(n(rng), d(rng));
}

inline Mat random_matrix(std::mt19937& rng, std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng);
    return m;
}

inline const std::vector<cochain::GModule>& property_modules() {
    static const std::vector<cochain::GModule> m{cochain::module_adjoint(), cochain::module_R(), cochain::module_S(),
                                                 cochain::module_so()};
    return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// suites

/// Exact arithmetic and the complex-level property checks.
inline SuiteReport suite_algebra() {
    Recorder r("algebra");
    std::mt19937 rng(20240611);
    {
        int bad = 0;
        for (int t = 0; t < 200; ++t) {
            auto a = detail::random_rational(rng), b = detail::random_rational(rng), c = detail::random_rational(rng);
            if ((a + b) * c != a * c + b * c || (a * b) * c != a * (b * c) || a + b != b + a) ++bad;
            if (!a.is_zero() && a * (Rational(1) / a) != Rational(1)) ++bad;
        }
        r.add("rational.field_axioms", bad == 0, "0 violations in 200 samples", std::to_string(bad) + " violations",
              "exact rational arithmetic");
    }
    {
        int bad = 0;
        for (int t = 0; t < 100; ++t) {
            Q10 a(detail::random_rational(rng), detail::random_rational(rng)), b(detail::random_rational(rng), detail::random_rational(rng));
            if ((a + b) * a != a * a + b * a) ++bad;
            if (!a.is_zero() && a * a.inverse() != Q10(1)) ++bad;
        }
        bool sq = Q10::sqrt_d() * Q10::sqrt_d() == Q10(10);
        r.add("quadratic.field_axioms", bad == 0 && sq, "0 violations, sqrt10^2 = 10",
              std::to_string(bad) + " violations, sqrt10^2 = " + (Q10::sqrt_d() * Q10::sqrt_d()).str(), "arithmetic in Q(sqrt 10)");
    }
    {
        int bad = 0;
        for (int t = 0; t < 20; ++t) {
            std::size_t n = 2 + static_cast<std::size_t>(t % 6);
            auto m = detail::random_matrix(rng, n);
            if (!evaluate_at(char_poly(m), m).is_zero()) ++bad;
        }
        r.add("poly.cayley_hamilton", bad == 0, "p_M(M) = 0 for 20 random matrices", std::to_string(bad) + " failures",
              "characteristic polynomials");
    }
    {
        int bad = 0;
        for (int t = 0; t < 20; ++t) {
            Mat m(4 + t % 3, 6);
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = t % 2 && j > 3 ? m(i, j - 2) : detail::random_rational(rng);
            auto k = kernel(m);
            bool ok = rank(m) + k.size() == m.cols();
            for (auto& v : k)
                for (auto& x : m.apply(v)) ok = ok && x.is_zero();
            bad += !ok;
        }
        r.add("linalg.rank_nullity", bad == 0, "rank + nullity = columns, kernel vectors annihilated",
              std::to_string(bad) + " failures", "exact linear algebra");
    }
    r.restart();
    int dd = 0, ss = 0, adj = 0, hodge = 0;
    for (auto& w : detail::property_modules()) {
        cochain::Complex cx(w);
        for (int k = 0; k < 2; ++k) {
            dd += !(cx.D(k + 1) * cx.D(k)).is_zero();
            ss += !(cx.Dstar(k) * cx.Dstar(k + 1)).is_zero();
        }
        for (int k = 0; k < 3; ++k)
            for (int t = 0; t < 3; ++t) {
                std::vector<Rational> x(cx.dim(k)), y(cx.dim(k + 1));
                for (auto& v : x) v = detail::random_rational(rng);
                for (auto& v : y) v = detail::random_rational(rng);
                auto pair = [](const Mat& g, const std::vector<Rational>& a, const std::vector<Rational>& b) {
                    Rational s(0);
                    auto gb = g.apply(b);
                    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * gb[i];
                    return s;
                };
                adj += pair(cx.gram(k + 1), cx.D(k).apply(x), y) != pair(cx.gram(k), x, cx.Dstar(k).apply(y));
            }
        for (auto& h : cochain::harmonic_h1(cx)) hodge += h.basis.size() != h.quotient_dim;
    }
    r.add("complex.d_squared", dd == 0, "d d = 0 on four modules", std::to_string(dd) + " nonzero composites",
          "Chevalley-Eilenberg differential");
    r.add("complex.dstar_squared", ss == 0, "d* d* = 0 on four modules", std::to_string(ss) + " nonzero composites",
          "codifferential");
    r.add("complex.adjointness", adj == 0, "<dx,y> = <x,d*y> on random samples", std::to_string(adj) + " mismatches",
          "codifferential as adjoint");
    r.add("complex.hodge_dims", hodge == 0, "dim harmonic = dim ker d / im d in every degree",
          std::to_string(hodge) + " mismatches", "harmonic representatives");
    return r.finish();
}

inline SuiteReport suite_sl3() {
    Recorder r("sl3");
    const auto& g = sl3::algebra();
    Mat printed{{0, 0, 0, -1, -1, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0, -1, 0},
                {0, 0, 0, 0, 0, 0, 0, 1},   {0, 0, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0, 0},
                {0, 0, 0, 0, 0, 0, 0, 0},   {0, 0, 0, 0, 0, 0, 0, 0}};
    r.add("ad_E13", g.ad(sl3::CE0) == printed, to_json(printed).dump(), to_json(g.ad(sl3::CE0)).dump(),
          "adjoint matrix of E13");
    auto sig = signature(g.killing());
    r.add("killing.signature", sig == Signature{5, 3, 0}, "(5,3,0)", detail::sig_str(sig), "invariant form on sl(3)");
    int out = 0;
    for (auto& [l, m] : g.R_family()) out += !g.is_in_so(m);
    for (auto& [l, m] : g.S_family()) out += !g.is_in_so(m);
    r.add("so.membership", out == 0, "20 of 20 R/S vectors in so(V,k)", std::to_string(20 - out) + " of 20",
          "R and S families inside so(5,3)");
    auto inc = sl3::bracket_inclusions();
    r.add("bracket.inclusions", inc.empty(), "[R,R] in S, [S,S] in R, [R,S] in ad(g)",
          inc.empty() ? "all pairs" : std::to_string(inc.size()) + " failures, first " + inc.front().a + "," + inc.front().b,
          "bracket inclusions of the isotypic pieces");
    int jf = sl3::jacobi_failures();
    r.add("jacobi", jf == 0, "0", std::to_string(jf), "Jacobi identity for sl(3)");
    auto so = sl3::decompose("so53");
    std::string so_dims = so.dims_str();
    r.add("decompose.so53", so.total_dim() == 28 && so.at("R").basis.size() == 10 && so.at("S").basis.size() == 10,
          "28 = 8 + 10 + 10", so_dims, "so(5,3) as an sl(3)-module");
    auto gl = sl3::decompose("gl8");
    // ad(g) and the second copy are listed inside the isotypic piece as well
    std::vector<Mat> all;
    std::string act;
    for (auto* c : {"Gamma00", "Gamma11(isotypic)", "Gamma30", "Gamma03", "Gamma22"}) {
        auto& b = gl.at(c).basis;
        all.insert(all.end(), b.begin(), b.end());
        act += (act.empty() ? "" : " + ") + std::to_string(b.size());
    }
    std::vector<std::vector<Rational>> flat;
    for (auto& m : all) flat.push_back(m.flat());
    std::size_t span = span_dim(flat);
    act += " = " + std::to_string(all.size()) + ", span " + std::to_string(span);
    r.add("decompose.gl8", act == "1 + 16 + 10 + 10 + 27 = 64, span 64", "1 + 16 + 10 + 10 + 27 = 64, span 64", act,
          "gl(8) as an sl(3)-module");
    return r.finish();
}

inline SuiteReport suite_cohomology() {
    Recorder r("cohomology");
    auto describe = [](const std::vector<cochain::HarmonicSpace>& hs) {
        std::string s;
        for (auto& h : hs)
            if (!h.basis.empty()) s += (s.empty() ? "" : ", ") + std::string("degree ") + std::to_string(h.degree) + ": " + std::to_string(h.basis.size());
        return s.empty() ? std::string("0") : s;
    };
    // R and S: one harmonic class in degree 1, proportional to the expected generator
    for (auto [name, mod, xi, fam] : {std::tuple{"R", cochain::module_R(), cochain::xi_R(), "R(-1,1) (x) e2*"},
                                      std::tuple{"S", cochain::module_S(), cochain::xi_S(), "S(1,-1) (x) e1*"}}) {
        cochain::Complex cx(mod);
        auto hs = cochain::harmonic_h1(cx);
        bool ok = cochain::total_dim(hs) == 1;
        for (auto& h : hs)
            if (!h.basis.empty()) ok = ok && h.degree == 1 && cochain::proportionality(cx.from_vector(1, h.basis[0]), xi).has_value();
        r.add(std::string("H1.") + name, ok, std::string("1, degree 1, spanned by ") + fam, describe(hs),
              std::string("positive cohomology with values in the ") + name + "-span");
    }
    const auto gl = sl3::decompose("gl8");
    auto zero_h1 = [&](const std::string& id, const std::vector<std::string>& comps) {
        std::string act;
        bool ok = true;
        for (auto& c : comps) {
            cochain::Complex cx(cochain::module_from_span(c, gl.at(c).basis));
            auto hs = cochain::harmonic_h1(cx);
            ok = ok && cochain::total_dim(hs) == 0;
            act += (act.empty() ? "" : "; ") + c + ": " + describe(hs);
        }
        r.add(id, ok, "0", act, "vanishing positive cohomology");
    };
    zero_h1("H1.Gamma00", {"Gamma00"});
    zero_h1("H1.Gamma11", {"Gamma11(isotypic)", "Gamma11(second)"});
    zero_h1("H1.Gamma22", {"Gamma22"});
    return r.finish();
}

inline SuiteReport suite_structure() {
    Recorder r("structure");
    for (auto& c : structeq::verify_shapes()) {
        std::string id = std::string("shape.") + c.family + std::to_string(c.p);
        std::string act = std::string(c.dstar_zero ? "d* = 0" : "d* != 0") + ", ratio " + (c.ratio ? c.ratio->str() : "none");
        r.add(id, c.ok(), "d* = 0, ratio " + c.expected.str(), act, "harmonic shapes of the curvature");
    }
    return r.finish();
}

inline SuiteReport suite_classification() {
    Recorder r("classification");
    using namespace structeq;
    auto table = [&](const std::string& prefix, const TableCheck& c) {
        std::string act = c.derived.str();
        if (c.mode == "ideal" && c.holds) act += " (ideal certificate, degree " + std::to_string(c.certificate_degree) + ")";
        if (!c.note.empty()) act += "; " + c.note;
        r.add(prefix + c.name, c.holds, c.printed, act, prefix == "nonzero." ? "non-vanishing branch table" : "vanishing branch table");
    };
    const auto both = solve_degrees(Branch::BothNonzero);
    {
        Poly c = both.value("Q11") * cst(5, 3);
        r.add("nonzero.C", (c - C_poly()).is_zero(), "12 - P1 P2/3", c.str(), "the constant C");
    }
    for (auto& c : both_nonzero_tables(both)) table("nonzero.", c);
    for (auto& c : higher_degree_checks(both)) table("nonzero.", c);
    for (auto& t : both_nonzero_cases(both)) {
        std::string exp = "C=" + t.C.str() + ", P1P2=" + t.P1P2.str() + ", Q-relations determined, no leftovers";
        std::string act = std::string(t.leftovers_vanish ? "no leftovers" : "leftovers remain") + ", " +
                          (t.q_unique ? "Q-relations determined" : "Q-relations not determined");
        r.add("nonzero.case." + t.name, t.leftovers_vanish && t.q_unique, exp, act, "final parameter triples");
    }
    const auto ron = solve_degrees(Branch::ROnly);
    auto rep = analyse_r_only(ron);
    for (auto& c : rep.tables) table("vanishing.", c);
    for (auto& c : rep.contradiction) table("vanishing.contradiction.", c);
    auto flag = [&](const std::string& id, bool v, const std::string& what) { r.add("vanishing." + id, v, what, v ? what : "not established", "vanishing branch subcases"); };
    flag("sub1.forces_Q21", rep.sub1_forces_q21, "P1 = 0 forces Q21 = 0");
    flag("sub1.vanishing", rep.sub1_vanishing, "then h4R = zeta = h5R = 0");
    flag("sub2.forces_Q12", rep.sub2_forces_q12, "P2 = 0 forces Q12 = 0");
    table("vanishing.sub2.", rep.sub2_h4);
    table("vanishing.sub2.", rep.sub2_h5);
    flag("sub2.factorization", rep.sub2_factorization, "(P1^2 - Q21)(P1^2 - 4 Q21) = 0");
    flag("sub3.zeta", rep.sub3_zeta, "zeta = Q12 Q21");
    flag("sub3.h5R", rep.sub3_h5, "h5R = 6 Q21^2");
    flag("sub3.forces_Q21", rep.sub3_forces_q21, "P1 = P2 = 0 forces Q21 = 0");
    flag("sub3.vanishing", rep.sub3_vanishing, "then h4R = zeta = h5R = 0");
    return r.finish();
}

/// Per-case structural checks (embedding, Jacobi, filtration); shared by suite and single-case runs.
inline void case_checks(Recorder& r, CaseId id, const Params& p) {
    std::string n = casebook::case_name(id);
    auto e = casebook::embedding(id, p);
    const auto& v = e.effective();
    auto resid = [&](const std::string& where) {
        for (auto& x : v.residuals)
            if (x.where.rfind(where, 0) == 0) return x.where + " = " + to_json(x.value).dump();
        return std::string("nonzero");
    };
    std::string note = e.corrected ? " (" + v.variant + ")" : "";
    r.add(n + ".so", v.so, "phi(Z_i) in so(V,k)", v.so ? "yes" + note : resid("so"), "symmetry algebra inside so(5,3)");
    r.add(n + ".flat", v.flat, "[phi,phi]/2 = phi o gamma", v.flat ? "exact" + note : resid("flat"), "flatness of the embedding");
    r.add(n + ".symbol", v.symbol, "negative part delta, chi of degree >= 1 with prescribed leading term",
          v.symbol ? "yes" + note : resid("symbol"), "symbol condition");
    auto sa = casebook::symmetry_algebra(id, p);
    r.add(n + ".jacobi", sa.jacobi, "0 failures", std::to_string(casebook::jacobi_failures(sa.c).size()) + " failures",
          "Jacobi identity of the case brackets");
    auto d = casebook::osculating_filtration(id, p);
    r.add(n + ".osculating", d == std::vector<std::size_t>{1, 3, 5, 7, 8}, "(1,3,5,7,8)", detail::dims_str(d), "osculating filtration");
}

inline SuiteReport suite_casebook(std::optional<CaseId> only, const Params& p) {
    Recorder r("casebook");
    if (only) {
        case_checks(r, *only, p);
        return r.finish();
    }
    for (auto id : casebook::all_cases()) {
        case_checks(r, id, {});
        bool sym = casebook::symbolic_flatness(id);
        r.add(casebook::case_name(id) + ".flat_symbolic", sym, "flat over the parameter locus", sym ? "exact" : "residual",
              "flatness for all admissible parameters");
    }
    {
        auto s = casebook::ii0_spectrum();
        bool ok = s.factors && s.trace.is_zero() && s.trace_sq == s.expected_trace_sq;
        r.add("II0.spectrum", ok, "{+-108/5, +-72/5, +-36/5, 0, 0}", s.char_poly.str(), "spectrum of phi(Z0) in case II0");
    }
    {
        auto k0 = casebook::symmetry_algebra(CaseId::II0);
        r.add("II0.killing", k0.killing_signature.rank() == 3, "nondegenerate", detail::sig_str(k0.killing_signature),
              "Killing form of the II0 algebra");
        auto k1 = casebook::symmetry_algebra(CaseId::II1);
        r.add("II1.killing", k1.killing.is_zero(), "identically zero",
              "signature " + detail::sig_str(k1.killing_signature) + ", K11=" + k1.killing(1, 1).str() + ", K22=" +
                  k1.killing(2, 2).str() + ", K12=" + k1.killing(1, 2).str() + ", derived dim " + std::to_string(k1.derived_basis.size()),
              "Killing form of the II1 algebra");
        auto k2 = casebook::symmetry_algebra(CaseId::II2);
        r.add("II2.killing", k2.killing_signature.rank() == 1, "rank 1", detail::sig_str(k2.killing_signature),
              "Killing form of the II2 algebra");
    }
    {
        auto grid = casebook::stabilizer_grid();
        std::size_t agree = 0, hits = 0;
        for (auto& g : grid) {
            agree += g.extends == g.on_locus;
            hits += g.extends;
        }
        r.add("stabilizer.grid", grid.size() >= 20 && agree == grid.size(), "extension iff Q12 + P2^2/25 = 0 on >= 20 points",
              std::to_string(agree) + "/" + std::to_string(grid.size()) + " agree, " + std::to_string(hits) + " extend",
              "stabilizer extension in case I1");
        int i2p = 0, i2 = 0;
        const std::vector<Rational> samples{Rational(1), Rational(-2), Rational(3, 2), Rational(-5, 7)};
        for (auto& x : samples) {
            i2p += casebook::stabilizer_extension(CaseId::I2prime, {{"P1", x}}).has_value();
            i2 += casebook::stabilizer_extension(CaseId::I2, {{"P1", x}}).has_value();
        }
        r.add("stabilizer.I2prime", i2p == 4, "extends at 4 of 4 samples", std::to_string(i2p) + " of 4", "stabilizer in case I2'");
        r.add("stabilizer.I2", i2 == 0, "extends at 0 of 4 samples", std::to_string(i2) + " of 4", "stabilizer in case I2");
    }
    for (auto& l : casebook::cayley_model_checks()) r.add("cayley_model." + l.id, l.pass, "holds", l.detail.empty() ? (l.pass ? "holds" : "fails") : l.detail, "contact Cayley model");
    {
        auto t = casebook::tanaka_prolongation({casebook::h54()});
        r.add("tanaka.h54", t.empty(), "no positive prolongation", t.empty() ? "none" : detail::dims_str(t),
              "prolongation of the Cayley symbol");
    }
    return r.finish();
}

inline SuiteReport suite_pde(std::optional<CaseId> only, const Params& p) {
    Recorder r("pde");
    auto sign = pdecheck::calibrate_sign();
    r.add("rows.calibration", sign == -1, "unique sign -1 on I0, anchored by the Cayley basis",
          sign ? "unique sign " + std::to_string(*sign) : "no unique sign", "sign of the operator translation");
    auto rows = [&](CaseId id, const Params& q) {
        for (auto& l : pdecheck::operator_row_check(id, q, sign.value_or(-1))) r.add(l, "row A8 of the operator vanishes", "last coordinate equations");
    };
    if (only) {
        rows(*only, p);
        return r.finish();
    }
    for (auto id : casebook::all_cases()) rows(id, {});
    for (auto& l : pdecheck::heisenberg_checks()) r.add(l, l.id == "heisenberg.plus" ? "[Z1,Z2] = -dz" : "[Z1,Z2] = dz", "Heisenberg conventions");
    for (auto& l : pdecheck::cayley_solution_check(Rational(6))) r.add(l, l.id == "cayley.independent" ? "rank 8" : "both annihilators vanish", "Cayley solution basis");
    for (auto& l : pdecheck::flat_case_check()) r.add(l, "8 solutions including constants", "flat system");
    for (auto& l : pdecheck::sl2_model_checks()) r.add(l, "holds", "sl(2) model fields");
    for (auto& l : pdecheck::ii0_solution_check()) r.add(l, "holds", "II0 solutions over Q(sqrt 10)");
    for (auto& l : pdecheck::sl2_filtration_check()) r.add(l, "(1,3,5,7,8) for some normalization", "sl(2)-module filtration");
    for (auto h : {Rational(0), Rational(1)})
        for (auto& l : pdecheck::asymptotic_frame_check(h)) {
            if (h == Rational(1) && l.id == "frame.flat_corollary") continue;
            r.add(l, "holds", "frame along asymptotic curves");
        }
    return r.finish();
}

/// Runs the selected suites in dependency order.
inline RunReport run(const Options& opt) {
    std::vector<std::string> sel = opt.suites;
    if (sel.empty()) sel = opt.case_id ? std::vector<std::string>{"casebook", "pde"} : suite_names();
    for (auto& s : sel)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw casebook::ConfigError("unknown suite " + s);
    if (opt.case_id) casebook::resolve_params(casebook::spec(*opt.case_id), opt.params);
    else if (!opt.params.empty())
        throw casebook::ConfigError("--set requires --case");

    RunReport rep;
    for (auto& name : suite_names()) {
        if (std::find(sel.begin(), sel.end(), name) == sel.end()) continue;
        if (name == "algebra") rep.suites.push_back(suite_algebra());
        else if (name == "sl3") rep.suites.push_back(suite_sl3());
        else if (name == "cohomology") rep.suites.push_back(suite_cohomology());
        else if (name == "structure") rep.suites.push_back(suite_structure());
        else if (name == "classification") rep.suites.push_back(suite_classification());
        else if (name == "casebook") rep.suites.push_back(suite_casebook(opt.case_id, opt.params));
        else if (name == "pde") rep.suites.push_back(suite_pde(opt.case_id, opt.params));
    }
    if (opt.case_id) rep.dossier = casebook::dossier(*opt.case_id, opt.params, opt.with_dossier_matrices);
    return rep;
}

/// Embedding matrices of the selected case, or of every case at its defaults.
inline json matrices_json(std::optional<CaseId> only, const Params& p) {
    json out = json::object();
    auto one = [&](CaseId id, const Params& q) {
        json ms = json::array();
        for (auto& m : casebook::embedding_matrices(id, q)) ms.push_back(to_json(m));
        out[casebook::case_name(id)] = std::move(ms);
    };
    if (only) one(*only, p);
    else
        for (auto id : casebook::all_cases()) one(id, {});
    return out;
}

}  // namespace sl3ext::report

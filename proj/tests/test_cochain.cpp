#include "sl3ext/algebra/poly.hpp"
#include "sl3ext/cochain/cochain.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sl3ext;
using namespace sl3ext::cochain;
using sl3::algebra;

namespace {

const std::vector<GModule>& modules() {
    static const std::vector<GModule> m{module_adjoint(), module_R(), module_S(), module_so()};
    return m;
}

std::vector<Rational> random_vec(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> c(-7, 7);
    std::vector<Rational> v(n);
    for (auto& x : v) x = Rational(c(rng), 1 + (c(rng) & 3));
    return v;
}

Rational pair(const Mat& g, const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s(0);
    auto gb = g.apply(b);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * gb[i];
    return s;
}

struct Vars {
    RingPtr ring = make_ring({"U1", "U2", "u11", "u12", "u21", "u22", "V1", "V2", "v11", "v12", "v21", "v22", "hR2", "hS2"});
    Poly operator[](const std::string& n) const { return Poly::var(ring, n); }
};

Matrix<Poly> adp(std::size_t i) { return lift<Poly>(algebra().ad(i)); }
Matrix<Poly> times(const Matrix<Poly>& m, const Poly& p) { return Matrix<Poly>(m).scale(p); }

}  // namespace

TEST(Cochain, DifferentialSquaresToZero) {
    for (auto& w : modules()) {
        Complex cx(w);
        EXPECT_TRUE((cx.D(1) * cx.D(0)).is_zero()) << w.name();
        EXPECT_TRUE((cx.D(2) * cx.D(1)).is_zero()) << w.name();
        EXPECT_TRUE((cx.Dstar(0) * cx.Dstar(1)).is_zero()) << w.name();
        EXPECT_TRUE((cx.Dstar(1) * cx.Dstar(2)).is_zero()) << w.name();
    }
}

TEST(Cochain, DifferentialIsGraded) {
    for (auto& w : modules()) {
        Complex cx(w);
        for (int k = 0; k < 3; ++k)
            for (std::size_t r = 0; r < cx.dim(k + 1); ++r)
                for (std::size_t c = 0; c < cx.dim(k); ++c)
                    if (!cx.D(k)(r, c).is_zero()) {
                        EXPECT_EQ(cx.degrees(k + 1)[r], cx.degrees(k)[c]);
                    }
    }
}

TEST(Cochain, CodifferentialIsAdjointRandom) {
    std::mt19937 rng(41);
    for (auto& w : modules()) {
        Complex cx(w);
        for (int k = 0; k < 3; ++k)
            for (int t = 0; t < 4; ++t) {
                auto x = random_vec(rng, cx.dim(k));
                auto y = random_vec(rng, cx.dim(k + 1));
                EXPECT_EQ(pair(cx.gram(k + 1), cx.D(k).apply(x), y), pair(cx.gram(k), x, cx.Dstar(k).apply(y)));
            }
    }
}

TEST(Cochain, HarmonicMatchesQuotient) {
    for (auto& w : modules()) {
        Complex cx(w);
        for (auto& h : harmonic_h1(cx)) EXPECT_EQ(h.basis.size(), h.quotient_dim) << w.name() << " degree " << h.degree;
    }
}

TEST(Cochain, PositiveH1OnlyInDegreeOneOfRAndS) {
    Complex ad(module_adjoint()), r(module_R()), s(module_S()), so(module_so());
    EXPECT_EQ(total_dim(harmonic_h1(ad)), 0u);
    auto hr = harmonic_h1(r), hs = harmonic_h1(s), hso = harmonic_h1(so);
    EXPECT_EQ(total_dim(hr), 1u);
    EXPECT_EQ(total_dim(hs), 1u);
    EXPECT_EQ(total_dim(hso), 2u);
    for (auto& h : hso)
        if (!h.basis.empty()) {
            EXPECT_EQ(h.degree, 1);
        }
}

TEST(Cochain, XiRepresentativesAreHarmonic) {
    Complex so(module_so());
    for (auto xi : {xi_R(), xi_S()}) {
        EXPECT_TRUE(ce_d(xi).is_zero());
        auto v = so.to_vector(xi);
        ASSERT_TRUE(v);
        for (auto& c : so.Dstar(0).apply(*v)) EXPECT_TRUE(c.is_zero());
    }
    // S_{1,-1} = 6 (A2 (x) A3^* - A6 (x) A7^*)
    EXPECT_EQ(algebra().S({1, -1}), (sl3::unit8(2, 3) - sl3::unit8(6, 7)).scale(Rational(6)));
}

TEST(Cochain, G0WeightsOnXi) {
    for (int l1 = -2; l1 <= 2; ++l1)
        for (int l2 = -2; l2 <= 2; ++l2) {
            std::vector<Rational> x(8, Rational(0));
            x[sl3::H1] = Rational(l1);
            x[sl3::H2] = Rational(l2);
            EXPECT_EQ(rho_g0(x, xi_S()).values, xi_S().scaled(Rational(5 * l1 - 4 * l2)).values);
            EXPECT_EQ(rho_g0(x, xi_R()).values, xi_R().scaled(Rational(-4 * l1 + 5 * l2)).values);
        }
    EXPECT_THROW(rho_g0(sl3::basis_vector(sl3::E0), xi_R()), std::invalid_argument);
}

TEST(Cochain, StabilizersInG0) {
    auto sr = stabilizer_g0({xi_R()});
    ASSERT_EQ(sr.size(), 1u);
    EXPECT_EQ(sr[0][sl3::H1] * Rational(4), sr[0][sl3::H2] * Rational(5));
    auto ss = stabilizer_g0({xi_S()});
    ASSERT_EQ(ss.size(), 1u);
    EXPECT_EQ(ss[0][sl3::H1] * Rational(5), ss[0][sl3::H2] * Rational(4));
    EXPECT_TRUE(stabilizer_g0({xi_R(), xi_S()}).empty());
}

TEST(Cochain, DegreeOneDisplay) {
    Vars v;
    Cochain<Poly> psi = Cochain<Poly>::zero(1);
    psi.values[0] = times(adp(sl3::E1), v["U1"]) + times(adp(sl3::E2), v["U2"]);
    psi.values[1] = times(adp(sl3::H1), v["u11"]) + times(adp(sl3::H2), v["u21"]);
    psi.values[2] = times(adp(sl3::H1), v["u12"]) + times(adp(sl3::H2), v["u22"]);
    auto dpsi = ce_d(psi);
    Complex ad(module_adjoint());
    auto c = ad.to_vector(dpsi);
    ASSERT_TRUE(c);
    // rows: (e0^e1, e0^e2, e1^e2) x adjoint coordinates
    auto at = [&](std::size_t w, std::size_t b) { return (*c)[w * 8 + b]; };
    EXPECT_EQ(at(0, sl3::E0), v["U2"] + v["u11"] + v["u21"]);
    EXPECT_EQ(at(1, sl3::E0), -v["U1"] + v["u12"] + v["u22"]);
    EXPECT_EQ(at(2, sl3::E1), v["U1"] + Poly(2) * v["u12"] - v["u22"]);
    EXPECT_EQ(at(2, sl3::E2), v["U2"] + v["u11"] - Poly(2) * v["u21"]);

    auto pv = ad.to_vector(psi);
    ASSERT_TRUE(pv);
    auto star = apply_mixed(ad.Dstar(0), *pv);
    EXPECT_EQ(star[sl3::CE1], v["U2"] - Poly(2) * v["u11"] + v["u21"]);
    EXPECT_EQ(star[sl3::CE2], -v["U1"] + v["u12"] - Poly(2) * v["u22"]);
    for (std::size_t i = 0; i < 8; ++i)
        if (i != sl3::CE1 && i != sl3::CE2) {
            EXPECT_TRUE(star[i].is_zero());
        }
}

TEST(Cochain, DegreeTwoDisplay) {
    Vars v;
    Cochain<Poly> psi = Cochain<Poly>::zero(1);
    psi.values[0] = times(adp(sl3::H1), v["V1"]) + times(adp(sl3::H2), v["V2"]);
    psi.values[1] = times(adp(sl3::CE1), v["v11"]) + times(adp(sl3::CE2), v["v21"]);
    psi.values[2] = times(adp(sl3::CE1), v["v12"]) + times(adp(sl3::CE2), v["v22"]);
    Complex ad(module_adjoint());
    auto pv = ad.to_vector(psi);
    ASSERT_TRUE(pv);
    auto star = apply_mixed(ad.Dstar(0), *pv);
    EXPECT_EQ(star[sl3::CE0], -(v["V1"] + v["V2"]) + v["v21"] - v["v12"]);
    for (std::size_t i = 1; i < 8; ++i) EXPECT_TRUE(star[i].is_zero());

    // degree-2 part of the harmonic curvature correction
    const auto& g = algebra();
    auto hR = v["hR2"], hS = v["hS2"];
    Cochain<Poly> chi = Cochain<Poly>::zero(1);
    chi.values[0] = times(lift<Poly>(g.R({-1, 1})), hR) - times(lift<Poly>(g.S({1, -1})), hS);
    chi.values[1] = times(lift<Poly>(g.S({1, 0})), Poly(3) * hS);
    chi.values[2] = times(lift<Poly>(g.R({0, 1})), Poly(3) * hR);
    auto dchi = ce_d(chi);
    EXPECT_TRUE(dchi.values[0].is_zero());
    EXPECT_TRUE(dchi.values[1].is_zero());
    EXPECT_EQ(dchi.values[2], times(lift<Poly>(g.R({-1, 1})), Poly(4) * hR) - times(lift<Poly>(g.S({1, -1})), Poly(4) * hS));
}

TEST(Cochain, ModuleFromSpanGamma22) {
    auto d = sl3::decompose("gl8");
    auto m = module_from_span("Gamma22", d.at("Gamma22").basis);
    EXPECT_EQ(m.dim(), 27u);
    Complex cx(m);
    EXPECT_TRUE((cx.D(1) * cx.D(0)).is_zero());
}

TEST(Cochain, RejectsNonInvariantModule) {
    EXPECT_THROW(Complex(GModule("bad", {algebra().ad(sl3::H1)}, Mat::identity(1))), std::logic_error);
}

#include "sl3ext/sl3/sl3.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sl3ext;
using namespace sl3ext::sl3;

TEST(Sl3, AdE13MatchesPrintedMatrix) {
    Mat printed{{0, 0, 0, -1, -1, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0, -1, 0},
                {0, 0, 0, 0, 0, 0, 0, 1},   {0, 0, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0, 0},
                {0, 0, 0, 0, 0, 0, 0, 0},   {0, 0, 0, 0, 0, 0, 0, 0}};
    EXPECT_EQ(algebra().ad(CE0), printed);
}

TEST(Sl3, StructureConstantExamples) {
    const auto& g = algebra();
    auto h1e12 = g.bracket(H1, CE1);
    EXPECT_EQ(h1e12, (std::vector<Rational>{0, 2, 0, 0, 0, 0, 0, 0}));
    auto e1e2 = g.bracket(E1, E2);
    EXPECT_EQ(e1e2, (std::vector<Rational>{0, 0, 0, 0, 0, 0, 0, -1}));
}

TEST(Sl3, JacobiAndAdHomomorphism) {
    const auto& g = algebra();
    EXPECT_EQ(jacobi_failures(), 0);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(g.ad_of(g.bracket(i, j)), commutator(g.ad(i), g.ad(j)));
    std::vector<std::vector<Rational>> flats;
    for (auto& m : g.ad()) flats.push_back(m.flat());
    EXPECT_EQ(span_dim(flats), 8u);
}

TEST(Sl3, GradingRespected) {
    const auto& g = algebra();
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            auto c = g.bracket(i, j);
            for (std::size_t k = 0; k < 8; ++k)
                if (!c[k].is_zero()) {
                    EXPECT_EQ(kDegree[k], kDegree[i] + kDegree[j]);
                }
        }
    std::vector<Rational> h(8, Rational(0));
    h[H1] = Rational(1);
    h[H2] = Rational(1);
    EXPECT_EQ(g.grading_element(), h);
}

TEST(Sl3, KillingForm) {
    const auto& g = algebra();
    EXPECT_EQ(g.killing()(H1, H1), Rational(12));
    EXPECT_EQ(signature(g.killing()), (Signature{5, 3, 0}));
    for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(g.is_in_so(g.ad(i)));
}

TEST(Sl3, StarOfDavid) {
    const auto& g = algebra();
    ASSERT_EQ(g.R_family().size(), 10u);
    ASSERT_EQ(g.S_family().size(), 10u);
    for (auto& [l, m] : g.R_family()) {
        EXPECT_TRUE(g.is_in_so(m)) << label_str('R', l);
        EXPECT_EQ(commutator(g.ad(H1), m), Mat(m).scale(Rational(2 * l.first - l.second)));
        EXPECT_EQ(g.degree_of(m), Rational(l.first + l.second));
    }
    for (auto& [l, m] : g.S_family()) {
        EXPECT_TRUE(g.is_in_so(m)) << label_str('S', l);
        EXPECT_EQ(commutator(g.ad(H1), m), Mat(m).scale(Rational(2 * l.first - l.second)));
        EXPECT_EQ(g.degree_of(m), Rational(l.first + l.second));
    }
    Mat xi = (unit8(3, 2) - unit8(7, 6)).scale(Rational(-6));
    EXPECT_EQ(g.R({-1, 1}), xi);
}

TEST(Sl3, DecomposeSo53) {
    auto d = decompose("so53");
    EXPECT_EQ(d.total_dim(), 28u);
    EXPECT_EQ(d.at("R").basis.size(), 10u);
}

TEST(Sl3, DecomposeGl8Casimir) {
    auto d = decompose("gl8");
    EXPECT_EQ(d.at("Gamma00").basis.size(), 1u);
    EXPECT_EQ(d.at("Gamma11(isotypic)").basis.size(), 16u);
    EXPECT_EQ(d.at("Gamma30").basis.size(), 10u);
    EXPECT_EQ(d.at("Gamma03").basis.size(), 10u);
    EXPECT_EQ(d.at("Gamma22").basis.size(), 27u);
    EXPECT_EQ(d.at("Gamma11(second)").basis.size(), 8u);
    EXPECT_EQ(d.at("Gamma30").casimir, d.at("Gamma03").casimir);
    EXPECT_NE(d.at("Gamma30").casimir, d.at("Gamma11(isotypic)").casimir);
    EXPECT_NE(d.at("Gamma30").casimir, d.at("Gamma22").casimir);
}

TEST(Sl3, BracketInclusions) {
    auto bad = bracket_inclusions();
    EXPECT_TRUE(bad.empty()) << (bad.empty() ? "" : bad.front().a + " " + bad.front().b);
    const auto& g = algebra();
    auto p = g.project(commutator(g.R({2, 1}), g.R({-1, -2})));
    EXPECT_TRUE(p.g.is_zero() && p.r.is_zero());
    auto q = g.project(commutator(g.S({1, 2}), g.S({-2, -1})));
    EXPECT_TRUE(q.g.is_zero() && q.s.is_zero());
    auto r = g.project(commutator(g.R({0, 0}), g.S({0, 0})));
    EXPECT_TRUE(r.r.is_zero() && r.s.is_zero());
}

TEST(Sl3, ProjectExamples) {
    const auto& g = algebra();
    auto p = g.project(g.ad(E0));
    EXPECT_EQ(p.g, g.ad(E0));
    EXPECT_TRUE(p.r.is_zero() && p.s.is_zero());
    auto q = g.project(g.R({0, 0}));
    EXPECT_EQ(q.r, g.R({0, 0}));
    auto s = g.project(g.ad(E2) + g.R({-1, 1}));
    EXPECT_EQ(s.g, g.ad(E2));
    EXPECT_EQ(s.r, g.R({-1, 1}));
    EXPECT_TRUE(s.s.is_zero());
    EXPECT_THROW(g.project(Mat::identity(8)), std::invalid_argument);
}

TEST(Sl3, ProjectIdempotentLinearRandom) {
    const auto& g = algebra();
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> c(-9, 9);
    auto sample = [&] {
        std::vector<Rational> v(28);
        for (auto& x : v) x = Rational(c(rng), 1 + (c(rng) & 3));
        return g.from_so_coords(v);
    };
    for (int k = 0; k < 20; ++k) {
        Mat a = sample(), b = sample();
        auto pa = g.project(a);
        EXPECT_EQ(pa.g + pa.r + pa.s, a);
        auto ppg = g.project(pa.g);
        EXPECT_EQ(ppg.g, pa.g);
        EXPECT_TRUE(ppg.r.is_zero() && ppg.s.is_zero());
        auto pab = g.project(a + b);
        auto pb = g.project(b);
        EXPECT_EQ(pab.r, pa.r + pb.r);
        EXPECT_EQ(pab.s, pa.s + pb.s);
    }
}

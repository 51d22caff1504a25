#include "sl3ext/algebra/ideal.hpp"
#include "sl3ext/algebra/json.hpp"
#include "sl3ext/algebra/linalg.hpp"
#include "sl3ext/algebra/poly.hpp"
#include "sl3ext/algebra/quadratic.hpp"
#include "sl3ext/algebra/structured.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sl3ext;

namespace {

Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    return Rational(num(rng), den(rng));
}

Matrix<Rational> random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    Matrix<Rational> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = random_rational(rng);
    return m;
}

}  // namespace

TEST(Rational, CanonicalForm) {
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational(4).exact(), "4/1");
    EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
    EXPECT_EQ(Rational::parse("+7"), Rational(7));
    EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, BigIntermediates) {
    Rational x(1);
    for (int i = 0; i < 40; ++i) x *= Rational(1000003, 999983);
    for (int i = 0; i < 40; ++i) x /= Rational(1000003, 999983);
    EXPECT_TRUE(x.is_one());
}

TEST(Rational, FieldAxiomsRandom) {
    std::mt19937 rng(17);
    for (int k = 0; k < 300; ++k) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        if (!a.is_zero()) {
            EXPECT_TRUE((a * a.inverse()).is_one());
        }
    }
}

TEST(Quadratic, SqrtSquaresToD) {
    Q10 s = Q10::sqrt_d();
    EXPECT_EQ(s * s, Q10(10));
    EXPECT_EQ(Q10(Rational(1), Rational(-1)).str(), "1 - sqrt(10)");
    EXPECT_EQ((-s).str(), "-sqrt(10)");
}

TEST(Quadratic, FieldAxiomsRandom) {
    std::mt19937 rng(23);
    for (int k = 0; k < 300; ++k) {
        Q10 a(random_rational(rng), random_rational(rng));
        Q10 b(random_rational(rng), random_rational(rng));
        Q10 c(random_rational(rng), random_rational(rng));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero()) {
            EXPECT_TRUE((a * a.inverse()).is_one());
        }
    }
}

TEST(Linalg, KernelExamples) {
    Matrix<Rational> m{{1, 2}, {2, 4}};
    auto k = kernel(m);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0][0] / k[0][1], Rational(-2));
    EXPECT_TRUE(kernel(Matrix<Rational>::identity(3)).empty());
}

TEST(Linalg, RankNullityRandom) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dim(1, 7);
    for (int k = 0; k < 60; ++k) {
        std::size_t r = dim(rng), c = dim(rng), rk = dim(rng);
        // product of random factors has rank <= rk
        auto m = random_matrix(rng, r, rk) * random_matrix(rng, rk, c);
        auto ker = kernel(m);
        for (auto& v : ker)
            for (auto& x : m.apply(v)) EXPECT_TRUE(x.is_zero());
        EXPECT_EQ(span_dim(ker), ker.size());
        EXPECT_EQ(rank(m) + ker.size(), c);
        // independent rank: row-reduce the transpose
        EXPECT_EQ(rank(m.transpose()), rank(m));
    }
}

TEST(Linalg, InverseAndSolve) {
    Matrix<Rational> m{{2, 1}, {1, 1}};
    auto inv = inverse(m);
    ASSERT_TRUE(inv);
    EXPECT_EQ(m * *inv, Matrix<Rational>::identity(2));
    EXPECT_FALSE(inverse(Matrix<Rational>{{1, 2}, {2, 4}}));
    EXPECT_FALSE(solve(Matrix<Rational>{{1, 2}, {2, 4}}, {Rational(1), Rational(1)}));
}

TEST(Linalg, SignatureBySylvester) {
    Matrix<Rational> m{{0, 1}, {1, 0}};
    EXPECT_EQ(signature(m), (Signature{1, 1, 0}));
    Matrix<Rational> d{{2, -1, 0}, {-1, 2, 0}, {0, 0, 0}};
    EXPECT_EQ(signature(d), (Signature{2, 0, 1}));
}

TEST(Poly, CharPolyExamples) {
    auto ring = make_ring({"t"});
    auto t = Poly::var(ring, "t");
    Matrix<Rational> d{{1, 0}, {0, 2}};
    EXPECT_EQ(char_poly(d), (t - Poly(1)) * (t - Poly(2)));
    EXPECT_EQ(char_poly(Matrix<Rational>(2, 2)), t * t);
}

TEST(Poly, CayleyHamiltonRandom) {
    std::mt19937 rng(11);
    for (int k = 0; k < 25; ++k) {
        auto m = random_matrix(rng, 4, 4);
        auto p = char_poly(m);
        EXPECT_EQ(p.degree_in(0), 4);
        EXPECT_TRUE(p.coefficient(0, 4).constant_value().is_one());
        EXPECT_TRUE(evaluate_at(p, m).is_zero());
    }
}

TEST(Poly, DiffSubstituteEvaluate) {
    auto ring = make_ring({"x", "y"});
    auto x = Poly::var(ring, "x"), y = Poly::var(ring, "y");
    EXPECT_EQ((x * x * y).diff("x"), Poly(2) * x * y);
    auto p = x * x + Poly(3) * y;
    EXPECT_EQ(p.substitute("x", y + Poly(1)), y * y + Poly(5) * y + Poly(1));
    EXPECT_EQ(p.evaluate({{"x", Rational(2)}, {"y", Rational(1, 3)}}).constant_value(), Rational(5));
    // Laurent substitution
    auto q = x * y;
    EXPECT_EQ(q.substitute("y", Poly(-9) * x.pow(-1)), Poly(-9));
    EXPECT_EQ((x * x - y).str(), "x^2 - y");
}

TEST(Poly, IdealCertificate) {
    auto ring = make_ring({"a", "b"});
    auto a = Poly::var(ring, "a"), b = Poly::var(ring, "b");
    std::vector<Poly> gens{a * b - Poly(1), a - b};
    auto cert = ideal_certificate(a * a - Poly(1), gens, {"a", "b"}, 1);
    ASSERT_TRUE(cert);
    EXPECT_FALSE(ideal_certificate(a + Poly(7), std::vector<Poly>{a * a}, {"a"}, 2));
}

TEST(Structured, ChainRuleExamples) {
    using SF = StructuredFunction<Q10>;
    using P2 = SF::Poly2;
    auto x = SF::x(), y = SF::y();
    SF f(P2(1), -3, 3);
    EXPECT_EQ(f.diff(2), SF(P2(3), -3, 3));
    P2 num = x.pow(6) + P2(SF::ring(), Q10::sqrt_d()) * x.pow(3) + P2(1);
    SF g(num, -3, 3);
    P2 numx = P2(6) * x.pow(5) + P2(SF::ring(), Q10(3) * Q10::sqrt_d()) * x * x;
    SF expected = SF(numx, -3, 3) - SF(P2(3) * y * num, -4, 3);
    EXPECT_EQ(g.diff(0), expected);
    // evaluation cross-check at (1,1,0)
    EXPECT_EQ(g.diff(0).evaluate_z0(Q10(1), Q10(1)), expected.evaluate_z0(Q10(1), Q10(1)));
}

TEST(Structured, MixedPartialsCommuteRandom) {
    using SF = StructuredFunction<Rational>;
    using P2 = SF::Poly2;
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> ex(-4, 4), pw(0, 3), cf(-5, 5);
    for (int k = 0; k < 40; ++k) {
        SF f;
        for (int t = 0; t < 3; ++t) {
            P2 p = P2::monomial(SF::ring(), {pw(rng), pw(rng)}, Rational(cf(rng))) + P2(cf(rng));
            f += SF(p, ex(rng), ex(rng));
        }
        EXPECT_EQ(f.diff(0).diff(1), f.diff(1).diff(0));
        EXPECT_EQ(f.diff(0).diff(2), f.diff(2).diff(0));
        EXPECT_EQ(f.diff(1).diff(2), f.diff(2).diff(1));
    }
}

TEST(Structured, CanonicalFormPullsOutFactor) {
    using SF = StructuredFunction<Rational>;
    using P2 = SF::Poly2;
    SF f(SF::u() * SF::x(), 0, 1);
    ASSERT_EQ(f.terms().size(), 1u);
    EXPECT_EQ(f.terms().at(1).e, 1);
    EXPECT_EQ(f.terms().at(1).p, SF::x());
    EXPECT_TRUE((SF(P2(1), 2, 0) - SF(SF::u() * SF::u(), 0, 0)).is_zero());
}

TEST(Json, ExactSerialization) {
    EXPECT_EQ(to_json(Rational(3, 5)), "3/5");
    EXPECT_EQ(to_json(Rational(2)), "2/1");
    auto q = to_json(Q10(Rational(1), Rational(-2)));
    EXPECT_EQ(q["b"], "-2/1");
    EXPECT_EQ(q["d"], 10);
}

#include "sl3ext/casebook/casebook.hpp"

#include <gtest/gtest.h>

using namespace sl3ext;
using namespace sl3ext::casebook;

namespace {

Vec vec(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

}  // namespace

TEST(Casebook, CatalogHasAllCases) {
    const auto& cat = case_catalog();
    ASSERT_EQ(cat.size(), 8u);
    for (std::size_t i = 0; i < cat.size(); ++i) EXPECT_EQ(cat[i].id, all_cases()[i]);
    EXPECT_TRUE(spec(CaseId::I2prime).excluded);
    EXPECT_EQ(spec(CaseId::I0).dim(), 4u);
    EXPECT_EQ(parse_case("I2prime"), CaseId::I2prime);
    EXPECT_FALSE(parse_case("III").has_value());
}

TEST(Casebook, PrintedBracketsII0) {
    auto s = symmetry_algebra(CaseId::II0);
    EXPECT_EQ(s.c[0][1], (Vec{Rational(0), Rational(36, 5), Rational(0)}));
    EXPECT_EQ(s.c[0][2], (Vec{Rational(0), Rational(0), Rational(-36, 5)}));
    EXPECT_EQ(s.c[1][2], vec({-1, 0, 0}));
}

TEST(Casebook, EveryCasePassesAtDefaults) {
    for (auto id : all_cases()) {
        auto e = embedding(id);
        const auto& r = e.effective();
        EXPECT_TRUE(r.so) << case_name(id);
        EXPECT_TRUE(r.flat) << case_name(id);
        EXPECT_TRUE(r.symbol) << case_name(id);
        EXPECT_TRUE(symmetry_algebra(id).jacobi) << case_name(id);
        EXPECT_EQ(osculating_filtration(id), (std::vector<std::size_t>{1, 3, 5, 7, 8})) << case_name(id);
    }
}

TEST(Casebook, VerbatimMisprintsFailTheChecks) {
    // II0: only the symbol condition is violated by the printed ce2
    auto ii0 = embedding(CaseId::II0);
    EXPECT_FALSE(ii0.verbatim.ok());
    EXPECT_TRUE(ii0.corrected->ok());
    for (auto id : {CaseId::II1, CaseId::II2}) {
        auto e = embedding(id);
        EXPECT_FALSE(e.verbatim.symbol) << case_name(id);
        EXPECT_TRUE(e.corrected->ok()) << case_name(id);
    }
    auto i0 = embedding(CaseId::I0);
    EXPECT_FALSE(i0.verbatim.flat);
    EXPECT_TRUE(i0.corrected->ok());
    EXPECT_FALSE(jacobi_failures(eval(spec(CaseId::I0).verbatim.gamma, {})).empty());
}

TEST(Casebook, I0BracketsRederivedFromMatrices) {
    auto phi = embedding_matrices(CaseId::I0);
    auto d = derived_brackets(phi);
    ASSERT_TRUE(d);
    auto printed = eval(spec(CaseId::I0).corrected->gamma, {});
    EXPECT_EQ(*d, printed);
    EXPECT_EQ((*d)[3][0], vec({-3, 0, 0, 0}));
    EXPECT_EQ((*d)[3][1], vec({0, -2, 0, 0}));
    EXPECT_EQ((*d)[3][2], vec({0, 0, -1, 0}));
}

TEST(Casebook, SymbolicFlatness) {
    for (auto id : all_cases()) EXPECT_TRUE(symbolic_flatness(id)) << case_name(id);
}

TEST(Casebook, AdmissibleSamples) {
    std::vector<std::pair<CaseId, Params>> samples{
        {CaseId::I1, {{"P2", Rational(-2)}, {"Q12", Rational(7, 3)}}},
        {CaseId::I2, {{"P1", Rational(-1)}}},
        {CaseId::I2prime, {{"P1", Rational(3, 2)}}},
        {CaseId::II1, {{"P1", Rational(3)}, {"P2", Rational(-3)}}},
        {CaseId::II1, {{"P1", Rational(-2, 3)}, {"P2", Rational(27, 2)}}},
        {CaseId::II2, {{"P1", Rational(-4)}, {"P2", Rational(36)}}},
    };
    for (auto& [id, p] : samples) {
        auto e = embedding(id, p);
        EXPECT_TRUE(e.effective().ok()) << case_name(id);
        EXPECT_TRUE(symmetry_algebra(id, p).jacobi) << case_name(id);
        EXPECT_EQ(osculating_filtration(id, p), (std::vector<std::size_t>{1, 3, 5, 7, 8})) << case_name(id);
    }
}

TEST(Casebook, ConstraintViolations) {
    try {
        embedding(CaseId::II1, {{"P1", Rational(1)}, {"P2", Rational(1)}});
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_STREQ(e.what(), "constraint P1*P2=-9 violated");
    }
    EXPECT_THROW(symmetry_algebra(CaseId::II2, {{"P1", Rational(1)}}), ConfigError);
    EXPECT_THROW(symmetry_algebra(CaseId::I2, {{"P1", Rational(0)}}), ConfigError);
    EXPECT_THROW(symmetry_algebra(CaseId::I1, {{"P2", Rational(0)}, {"Q12", Rational(0)}}), ConfigError);
    EXPECT_THROW(symmetry_algebra(CaseId::O, {{"P1", Rational(1)}}), ConfigError);
}

TEST(Casebook, KillingInvariants) {
    auto ii0 = symmetry_algebra(CaseId::II0);
    EXPECT_EQ(ii0.killing_signature, (Signature{2, 1, 0}));
    auto ii2 = symmetry_algebra(CaseId::II2);
    EXPECT_EQ(ii2.killing_signature.rank(), 1);
    ASSERT_EQ(ii2.derived_basis.size(), 2u);
    EXPECT_TRUE(ii2.derived_abelian);
    // spanned by Z0 and P2 Z1 - P1 Z2 at (12, -12)
    EXPECT_TRUE(in_span(ii2.derived_basis, vec({1, 0, 0})));
    EXPECT_TRUE(in_span(ii2.derived_basis, vec({0, -12, -12})));
}

TEST(Casebook, II1KillingFormHasRankOne) {
    // The bracket table forces [g, g] = <Z0 - P2 Z1 + P1 Z2> and tr ad Z1 = -2 P1,
    // so the Killing form is lam^T lam with lam = (0, -2 P1, -2 P2), never zero.
    for (auto p : {Params{}, Params{{"P1", Rational(3)}, {"P2", Rational(-3)}}}) {
        auto s = symmetry_algebra(CaseId::II1, p);
        EXPECT_EQ(s.killing_signature.rank(), 1);
        EXPECT_EQ(s.derived_basis.size(), 1u);
        auto d = derived_brackets(embedding_matrices(CaseId::II1, p));
        ASSERT_TRUE(d);
        EXPECT_EQ(invariants(*d).killing, s.killing);
    }
    auto s = symmetry_algebra(CaseId::II1);
    EXPECT_EQ(s.killing(1, 1), Rational(4));
    EXPECT_EQ(s.killing(2, 2), Rational(324));
    EXPECT_EQ(s.killing(1, 2), Rational(-36));
    // II1 and II2 are still told apart by the derived algebra
    EXPECT_NE(s.derived_basis.size(), symmetry_algebra(CaseId::II2).derived_basis.size());
}

TEST(Casebook, StabilizerExtension) {
    auto i1 = stabilizer_extension(CaseId::I1, {{"P2", Rational(5)}, {"Q12", Rational(-1)}});
    ASSERT_TRUE(i1);
    EXPECT_EQ(i1->a, (Vec{Rational(0), Rational(0), Rational(3)}));
    // proportional to the printed 5/3 H1 + 4/3 H2 + P2/5 ce2
    Vec printed(8, Rational(0));
    printed[sl3::H1] = Rational(5, 3);
    printed[sl3::H2] = Rational(4, 3);
    printed[sl3::CE2] = Rational(1);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(i1->element[k], printed[k] * Rational(3));
    EXPECT_FALSE(stabilizer_extension(CaseId::I1).has_value());
    auto i2p = stabilizer_extension(CaseId::I2prime, {{"P1", Rational(-2)}});
    ASSERT_TRUE(i2p);
    EXPECT_EQ(i2p->a, (Vec{Rational(0), Rational(-6), Rational(0)}));
    EXPECT_FALSE(stabilizer_extension(CaseId::I2).has_value());
    EXPECT_FALSE(stabilizer_extension(CaseId::I2, {{"P1", Rational(-1)}}).has_value());
    EXPECT_THROW(stabilizer_extension(CaseId::I0), std::invalid_argument);
}

TEST(Casebook, StabilizerGridMatchesLocus) {
    auto grid = stabilizer_grid();
    EXPECT_GE(grid.size(), 20u);
    int hits = 0;
    for (auto& g : grid) {
        EXPECT_EQ(g.extends, g.on_locus) << g.P2 << " " << g.Q12;
        hits += g.extends;
    }
    EXPECT_EQ(hits, 7);
}

TEST(Casebook, ExtensionClosesSubalgebra) {
    auto ext = stabilizer_extension(CaseId::I2prime);
    ASSERT_TRUE(ext);
    auto phi = embedding_matrices(CaseId::I2prime);
    phi.push_back(sl3::algebra().ad_of(ext->element));
    auto d = derived_brackets(phi);
    ASSERT_TRUE(d);
    EXPECT_TRUE(invariants(*d).jacobi);
}

TEST(Casebook, CayleyModel) {
    for (auto& c : cayley_model_checks()) EXPECT_TRUE(c.pass) << c.id << ": " << c.detail;
}

TEST(Casebook, TanakaProlongation) {
    EXPECT_TRUE(tanaka_prolongation({h54()}).empty());
    EXPECT_TRUE(tanaka_prolongation({}).empty());
    auto full = tanaka_prolongation({sl3::basis_vector(sl3::H1), sl3::basis_vector(sl3::H2)});
    EXPECT_EQ(full, (std::vector<std::size_t>{2, 1}));
    EXPECT_THROW(tanaka_prolongation({sl3::basis_vector(sl3::CE1)}), std::invalid_argument);
}

TEST(Casebook, II0Spectrum) {
    auto s = ii0_spectrum();
    EXPECT_TRUE(s.factors) << s.char_poly.str();
    EXPECT_TRUE(s.trace.is_zero());
    EXPECT_EQ(s.trace_sq, s.expected_trace_sq);
    EXPECT_EQ(s.expected_trace_sq, Rational(2) * (Rational(108 * 108, 25) + Rational(72 * 72, 25) + Rational(36 * 36, 25)));
}

TEST(Casebook, PrintedStabilizersMatchCases) {
    // the printed fourth symmetry of I0 is the extension at P2 = Q12 = 0, up to the factor 3
    auto h = spec(CaseId::I0).printed_stabilizer;
    ASSERT_TRUE(h);
    auto phi = embedding_matrices(CaseId::I0);
    phi.pop_back();
    auto ext = extension_of(phi);
    ASSERT_TRUE(ext);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(eval((*h)[k], {}) * Rational(3), ext->element[k]);
}

TEST(Casebook, DossierIsDeterministic) {
    auto a = dossier(CaseId::II1, {{"P1", Rational(1)}, {"P2", Rational(-9)}}).dump();
    auto b = dossier(CaseId::II1, {{"P1", Rational(1)}, {"P2", Rational(-9)}}).dump();
    EXPECT_EQ(a, b);
    auto j = json::parse(a);
    EXPECT_EQ(j["parameters"]["P2"], "-9/1");
    EXPECT_EQ(j["osculating_dims"], json::parse("[1,3,5,7,8]"));
    EXPECT_EQ(j["embedding_checks"].size(), 2u);
}

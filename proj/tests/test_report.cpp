#include "sl3ext/report/report.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace sl3ext;
using namespace sl3ext::report;

namespace {

const RunReport& full() {
    static const RunReport r = run({});
    return r;
}

std::set<std::string> failing(const RunReport& r) {
    std::set<std::string> out;
    for (auto& s : r.suites)
        for (auto& c : s.checks)
            if (c.status == Status::Fail) out.insert(s.name + "/" + c.id);
    return out;
}

}  // namespace

TEST(Report, SuitesInDependencyOrder) {
    ASSERT_EQ(full().suites.size(), suite_names().size());
    for (std::size_t i = 0; i < suite_names().size(); ++i) EXPECT_EQ(full().suites[i].name, suite_names()[i]);
}

TEST(Report, ChecksSortedAndUnique) {
    for (auto& s : full().suites) {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < s.checks.size(); ++i) {
            EXPECT_TRUE(seen.insert(s.checks[i].id).second) << s.name << "/" << s.checks[i].id;
            if (i) {
                EXPECT_LT(s.checks[i - 1].id, s.checks[i].id);
            }
            EXPECT_EQ(s.checks[i].suite, s.name);
            EXPECT_FALSE(s.checks[i].anchor.empty());
            EXPECT_FALSE(s.checks[i].expected.empty());
            EXPECT_FALSE(s.checks[i].actual.empty());
        }
    }
}

TEST(Report, CohomologySuiteHasFiveChecks) {
    auto r = run({{"cohomology"}, std::nullopt, {}, false});
    ASSERT_EQ(r.suites.size(), 1u);
    EXPECT_EQ(r.suites[0].checks.size(), 5u);
}

TEST(Report, KnownFailuresOnly) {
    // the trivial module has H1 in degree 1; zeta and h5S misprints; II1 Killing form has rank 1
    std::set<std::string> expected{"cohomology/H1.Gamma00", "classification/nonzero.h5S", "classification/nonzero.zeta",
                                   "casebook/II1.killing"};
    EXPECT_EQ(failing(full()), expected);
    EXPECT_FALSE(full().ok());
}

TEST(Report, JsonShapeAndDeterminism) {
    auto a = full().to_json(false).dump();
    auto b = run({}).to_json(false).dump();
    EXPECT_EQ(a, b);
    auto j = full().to_json();
    EXPECT_EQ(j["version"], kVersion);
    EXPECT_EQ(j["summary"]["fail"], 4);
    EXPECT_EQ(j["summary"]["skipped"], 0);
    EXPECT_TRUE(j["suites"][0]["checks"][0].contains("elapsed_ms"));
    EXPECT_FALSE(full().to_json(false)["suites"][0]["checks"][0].contains("elapsed_ms"));
}

TEST(Report, SingleCaseRun) {
    Options o;
    o.case_id = casebook::CaseId::II1;
    o.params = {{"P1", Rational(1)}, {"P2", Rational(-9)}};
    auto r = run(o);
    EXPECT_TRUE(r.ok());
    ASSERT_TRUE(r.dossier);
    EXPECT_EQ((*r.dossier)["case"], "II1");
    ASSERT_EQ(r.suites.size(), 2u);
    EXPECT_EQ(r.suites[0].name, "casebook");
    EXPECT_EQ(r.suites[1].name, "pde");
}

TEST(Report, ConfigErrors) {
    Options o;
    o.case_id = casebook::CaseId::II1;
    o.params = {{"P1", Rational(1)}, {"P2", Rational(1)}};
    try {
        run(o);
        FAIL() << "expected ConfigError";
    } catch (const casebook::ConfigError& e) {
        EXPECT_STREQ(e.what(), "constraint P1*P2=-9 violated");
    }
    EXPECT_THROW(run({{}, std::nullopt, {{"P1", Rational(1)}}, false}), casebook::ConfigError);
    EXPECT_THROW(run({{"nope"}, std::nullopt, {}, false}), casebook::ConfigError);
}

TEST(Report, TextFormatListsFailures) {
    auto t = full().text();
    EXPECT_NE(t.find("FAIL nonzero.zeta"), std::string::npos);
    EXPECT_NE(t.find("summary: "), std::string::npos);
}

TEST(Report, MatricesExport) {
    auto j = matrices_json(std::nullopt, {});
    EXPECT_EQ(j.size(), 8u);
    EXPECT_EQ(j["I0"].size(), 4u);
    EXPECT_EQ(j["II0"][0].size(), 8u);
}

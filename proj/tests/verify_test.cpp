#include "lk/errors.hpp"
#include "lk/intersection_form.hpp"
#include "lk/random_forest.hpp"
#include "lk/report.hpp"
#include "lk/verify.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

namespace lk {
namespace {

SuiteOptions small(int instances, int margin = 0) {
  SuiteOptions o;
  o.instances = instances;
  o.margin = margin;
  o.seed = 3;
  return o;
}

TEST(RandomForest, Deterministic) {
  RandomForestSpec spec;
  spec.seed = 99;
  EXPECT_EQ(random_forest(spec), random_forest(spec));
}

TEST(RandomForest, BareV0) {
  RandomForestSpec spec;
  spec.max_framed = 0;
  const Forest f = random_forest(spec);
  EXPECT_EQ(f.size(), 1u);
  EXPECT_TRUE(f.vertex(0).unframed());
}

TEST(RandomForest, AlwaysDefiniteAndInRange) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RandomForestSpec spec;
    spec.seed = seed;
    spec.max_framed = 6;
    spec.v0_attachment = seed % 2 ? V0Attachment::leaf : V0Attachment::random;
    const Forest f = random_forest(spec);
    EXPECT_TRUE(is_negative_definite(f));
    EXPECT_LE(f.framed_count(), 6u);
    for (auto i : f.framed_vertices()) {
      EXPECT_GE(*f.vertex(i).framing, -5);
      EXPECT_LE(*f.vertex(i).framing, -1);
    }
    if (spec.v0_attachment == V0Attachment::leaf) {
      EXPECT_LE(f.degree(f.v0()), 1u);
    }
  }
}

TEST(Suites, UnknownNameThrows) { EXPECT_THROW(run_suite("no_such_suite", small(1)), Error); }

TEST(Suites, Deterministic) {
  const auto a = run_suite("d_squared", small(8, 1));
  const auto b = run_suite("d_squared", small(8, 1));
  EXPECT_EQ(a.checked, b.checked);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].checked, b.checks[i].checked);
}

TEST(Suites, FoundationsPass) {
  for (const char* name : {"d_squared", "grading_drop", "filtered_differential"}) {
    const auto r = run_suite(name, small(10, 1));
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_TRUE(r.failures.empty()) << name;
    EXPECT_GT(r.checked, 0u) << name;
  }
}

TEST(Suites, SmallSuitesPass) {
  for (const char* name : {"vertex_family", "reduction_confluence", "eq6_oracle", "lemma31", "s_divisor"}) {
    const auto r = run_suite(name, small(5, 1));
    EXPECT_TRUE(r.passed()) << name << "\n" << to_text(r);
  }
}

TEST(Suites, ExpectedFailureIsWitnessed) {
  const auto r = run_suite("s_divisor", small(5, 1));
  const auto* c = r.find("divisor_2_preserves_grading_at_large_l");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->mode, CheckMode::expected_failure);
  EXPECT_GT(c->failed, 0u);
  EXPECT_FALSE(r.witnesses.empty());
}

TEST(Suites, FailuresAreData) {
  const auto r = run_suite("edge_family", small(4, 1));
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.failures.empty());
  for (const auto& f : r.failures) {
    EXPECT_FALSE(f.forest.empty());
    EXPECT_FALSE(f.generator.empty());
  }
}

TEST(Suites, SkipRatio) {
  SuiteReport r;
  r.checked = 10;
  r.skipped = 10;
  EXPECT_TRUE(r.skip_ratio_ok());
  r.skipped = 11;
  EXPECT_FALSE(r.skip_ratio_ok());
  EXPECT_FALSE(r.passed());
}

TEST(Report, JsonMirrorsText) {
  const auto r = run_suite("eq6_oracle", small(3));
  const auto j = to_json(r);
  EXPECT_EQ(j["suite"], "eq6_oracle");
  EXPECT_EQ(j["instances"], 3);
  EXPECT_EQ(j["checked"].get<std::uint64_t>(), r.checked);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["checks"].size(), r.checks.size());
  EXPECT_NE(to_text(r).find("eq6_oracle"), std::string::npos);
}

}  // namespace
}  // namespace lk

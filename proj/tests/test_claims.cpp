#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "multlab/multlab.hpp"

using namespace multlab;

namespace {

std::vector<ClaimReport> run(std::string_view id, json params = json::object(), std::uint64_t seed = 0) {
  return verify_claim(id, params, seed);
}

}  // namespace

TEST(Registry, IdsUnique) {
  std::set<std::string> ids;
  for (const auto& e : claim_registry()) {
    EXPECT_TRUE(ids.insert(e.id).second) << e.id;
    EXPECT_EQ(e.in_scope, static_cast<bool>(e.run)) << e.id;
    if (!e.in_scope) EXPECT_FALSE(e.note.empty()) << e.id;
  }
}

TEST(Registry, CoversEveryStatement) {
  const std::vector<std::string> ids{"conj:second", "thm:second", "thm:dense",     "cor:dense",        "thm:cons",
                                     "problem:limsup", "thm:many", "thm:m/9",     "lem:many",         "thm:diff",
                                     "cor:diff",    "problem:a1-a2", "obs:simple", "prop:distinct-mu", "obs:grid8",
                                     "q4:equidistant", "q1:non-diameter", "q2:many-rich", "q3:gaps"};
  for (const auto& id : ids) EXPECT_NE(find_claim(id), nullptr) << id;
}

TEST(Registry, AliasesResolve) {
  EXPECT_EQ(normalize_claim_id("grid8"), "obs:grid8");
  EXPECT_EQ(normalize_claim_id("cascade"), "thm:diff");
  EXPECT_EQ(normalize_claim_id("thm:dense"), "thm:dense");
  EXPECT_EQ(find_claim("nope"), nullptr);
  EXPECT_THROW(run("nope"), InvalidArgument);
}

TEST(Registry, OutOfScopeReported) {
  const auto r = run("problem:limsup");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].verdict, Verdict::reported);
  EXPECT_TRUE(r[0].evidence.contains("out_of_scope"));
}

TEST(SecondDistance, Examples) {
  EXPECT_EQ(verify_convex_second_distance(regular_ngon(9).points).verdict, Verdict::pass);
  EXPECT_EQ(verify_convex_second_distance(random_convex_exact(20, 3)).verdict, Verdict::pass);
  EXPECT_THROW(verify_convex_second_distance(detail::rhombus()), TooSmall);
  EXPECT_THROW(verify_convex_second_distance(grid_section(3, 3).points), NotConvex);
  EXPECT_THROW(verify_conjecture_second(detail::rhombus()), TooSmall);
}

TEST(Staircase, Examples) {
  auto r = verify_staircase(arc_with_center(7, 50 * std::numbers::pi / 180).points);
  EXPECT_TRUE(r.evidence["full_staircase"].get<bool>());
  EXPECT_FALSE(r.evidence["collinear"].get<bool>());
  EXPECT_FALSE(r.evidence["cocircular"].get<bool>());
  r = verify_staircase(hex_two_row(9).points);
  EXPECT_TRUE(r.evidence["distinct_multiplicities"].get<bool>());
  EXPECT_FALSE(r.evidence["full_staircase"].get<bool>());
  r = verify_staircase(equidistant_line(5).points);
  EXPECT_TRUE(r.evidence["full_staircase"].get<bool>());
  EXPECT_TRUE(r.evidence["collinear"].get<bool>());
}

TEST(Cascade, TenRounds) {
  auto r = verify_cascade({.k = 1, .prescribed = {1.0}, .rounds = 10, .seed = 0});
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.evidence["a_head"][0], 5120);
  EXPECT_LE(r.evidence["a_head"][1].get<std::size_t>(), 1024u);

  r = verify_cascade({.k = 2, .prescribed = {1.0, std::sqrt(3.0)}, .rounds = 10, .seed = 0});
  EXPECT_EQ(r.verdict, Verdict::pass);
  // five uses of each length, n/2 pairs per use
  EXPECT_EQ(r.evidence["a_head"][0], 512 * 5);
  EXPECT_EQ(r.evidence["a_head"][1], 512 * 5);
  EXPECT_LE(r.evidence["a_head"][2].get<std::size_t>(), 1024u);

  r = verify_cascade({.k = 1, .prescribed = {1.0}, .rounds = 1, .seed = 0});
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.evidence["a_head"], json::array({1}));
  EXPECT_THROW(verify_cascade({.k = 1, .prescribed = {1.0}, .rounds = 15}), RangeExceeded);
}

TEST(Grid8, SweepAllPass) {
  const auto r = verify_all({"grid8"}, 0, {{"k_min", 4}, {"k_max", 30}});
  ASSERT_EQ(r.size(), 27u);
  for (const auto& x : r) EXPECT_EQ(x.verdict, Verdict::pass) << x.inputs;
  const auto one = run("grid8", {{"k", 4}});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].evidence["13"], 8);
  EXPECT_EQ(one[0].evidence["8"], 8);
}

TEST(Lemma, Verdicts) {
  for (std::size_t k = 1; k <= 6; ++k) EXPECT_EQ(verify_lemma_many(k).verdict, Verdict::pass) << k;
  EXPECT_FALSE(verify_lemma_many(1).evidence["unordered_below_bound"].empty());
}

TEST(Asymptotic, Reported) {
  for (const char* id : {"thm:many", "thm:m/9", "cor:diff", "cor:dense"})
    for (const auto& r : run(id)) EXPECT_EQ(r.verdict, Verdict::reported) << id;
}

TEST(ThreeGroup, DefaultParametersPass) {
  for (const auto& r : run("thm:cons")) {
    EXPECT_EQ(r.verdict, Verdict::pass) << r.inputs;
    EXPECT_TRUE(r.evidence["mu_Delta2_ok"].get<bool>());
  }
}

TEST(VerifyAll, EmptySelection) { EXPECT_TRUE(verify_all({}).empty()); }

TEST(VerifyAll, DefaultSuiteHasNoFailures) {
  const auto r = verify_all(default_suite(), 0);
  EXPECT_FALSE(r.empty());
  for (const auto& x : r) EXPECT_NE(x.verdict, Verdict::fail) << json(x).dump();
  EXPECT_FALSE(any_failed(r));
}

TEST(VerifyAll, DeterministicAndOrderPreserving) {
  const std::vector<std::string> sel{"thm:dense", "lem:many", "obs:simple", "inv:hopf-pannwitz", "thm:diff"};
  const auto a = verify_all(sel, 7);
  setenv("MULTLAB_THREADS", "1", 1);
  const auto b = verify_all(sel, 7);
  unsetenv("MULTLAB_THREADS");
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(json(a[i]).dump(), json(b[i]).dump());
  std::vector<std::string> order;
  for (const auto& r : a)
    if (order.empty() || order.back() != r.claim_id) order.push_back(r.claim_id);
  EXPECT_EQ(order, sel);
}

TEST(VerifyAll, FailurePropagates) {
  ClaimReport bad;
  bad.verdict = Verdict::fail;
  EXPECT_TRUE(any_failed({bad}));
  bad.verdict = Verdict::reported;
  EXPECT_FALSE(any_failed({bad}));
}

TEST(ReportJson, Shape) {
  const auto j = json(verify_grid8(5));
  EXPECT_EQ(j["claim"], "obs:grid8");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["inputs"]["k"], 5);
  EXPECT_EQ(j["evidence"]["25"], 8);
}

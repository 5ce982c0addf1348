#include <gtest/gtest.h>

#include <random>

#include "ccv/repair/repair.hpp"
#include "oracles.hpp"

namespace ccv::repair {
namespace {

TEST(RepairOracle, SolverMatchesExhaustiveEnumeration) {
  std::mt19937 rng(424242);
  int compared = 0, with_models = 0, tied = 0, impossible = 0;
  for (int attempt = 0; attempt < 20000 && compared < 300; ++attempt) {
    auto w = testing::random_world(rng, {2, 2, 3});
    auto shapes = testing::random_shapes(rng);
    auto strategies = testing::random_strategies(rng);
    auto report = shacl::validate(w.g, shapes);
    if (report.conforms) continue;
    CandidateUniverse u;
    try {
      u = strategy::compile(strategies, ground(w.g, shapes, report, strategy::ground_options(strategies)), w.g);
    } catch (const UnrepairableError&) {
      continue;
    }
    if (u.atoms.size() > 14 || u.atoms.empty()) continue;
    ++compared;
    auto expected = testing::brute_force(w.g, shapes, u);
    SCOPED_TRACE(rdf::serialize_turtle(w.g) + strategy::format_directives(u, rdf::default_prefixes()));
    if (expected.empty()) {
      ++impossible;
      EXPECT_THROW(solve(w.g, shapes, u), UnrepairableError);
      continue;
    }
    ++with_models;
    tied += expected.size() > 1;
    auto got = solve(w.g, shapes, u);
    ASSERT_EQ(got, expected);
    SolveOptions parallel;
    parallel.threads = 4;
    ASSERT_EQ(solve(w.g, shapes, u, parallel), expected);
    for (const auto& m : got) EXPECT_EQ(model_weight(w.g, u, m), m.cost.weight);
  }
  EXPECT_GE(compared, 200);
  EXPECT_GT(with_models, 150);
  EXPECT_GT(tied, 20);
  RecordProperty("compared", compared);
  RecordProperty("unrepairable", impossible);
}

TEST(RepairProperty, SoundAndForbiddenFree) {
  std::mt19937 rng(77);
  int checked = 0;
  for (int attempt = 0; attempt < 400; ++attempt) {
    auto w = testing::random_world(rng, {3, 3, 4});
    auto shapes = testing::random_shapes(rng);
    auto strategies = testing::random_strategies(rng);
    RepairResult r;
    try {
      r = repair(w.g, shapes, strategies);
    } catch (const UnrepairableError&) {
      continue;
    }
    ++checked;
    for (const auto& m : r.models) {
      ASSERT_TRUE(shacl::validate(rdf::apply_patch(w.g, m.additions, m.deletions), shapes).conforms);
      for (const auto& a : m.atoms()) {
        const Candidate* c = r.universe.find(a);
        ASSERT_NE(c, nullptr);
        EXPECT_FALSE(c->forbidden);
        if (a.action == Action::del) EXPECT_TRUE(w.g.contains(a.triple));
        else EXPECT_FALSE(w.g.contains(a.triple));
      }
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(RepairProperty, MinimalWithoutStrategies) {
  std::mt19937 rng(78);
  for (int attempt = 0; attempt < 300; ++attempt) {
    auto w = testing::random_world(rng, {3, 3, 4});
    auto shapes = testing::random_shapes(rng);
    RepairResult r;
    try {
      r = repair(w.g, shapes, {});
    } catch (const UnrepairableError&) {
      continue;
    }
    for (const auto& m : r.models) {
      for (const auto& drop : m.atoms()) {
        RepairModel smaller = m;
        (drop.action == Action::add ? smaller.additions : smaller.deletions).erase(drop.triple);
        EXPECT_FALSE(shacl::validate(rdf::apply_patch(w.g, smaller.additions, smaller.deletions), shapes).conforms);
      }
    }
  }
}

TEST(RepairProperty, RepairedGraphNeedsNoFurtherRepair) {
  std::mt19937 rng(79);
  auto strategies = strategy::read_strategy_file(testing::data_path("profile/ccv-strategies.ttl"));
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto w = testing::random_world(rng, {3, 3, 4});
    RepairResult r;
    try {
      r = repair(w.g, testing::ccv_shapes(), strategies);
    } catch (const UnrepairableError&) {
      continue;
    }
    for (const auto& m : r.models) {
      auto again = repair(rdf::apply_patch(w.g, m.additions, m.deletions), testing::ccv_shapes(), strategies);
      EXPECT_TRUE(again.report.conforms);
      EXPECT_TRUE(again.models.empty());
    }
  }
}

TEST(RepairProperty, DeterministicAcrossThreads) {
  std::mt19937 rng(80);
  auto strategies = strategy::read_strategy_file(testing::data_path("profile/ccv-strategies.ttl"));
  for (int attempt = 0; attempt < 150; ++attempt) {
    auto w = testing::random_world(rng, {3, 3, 4});
    RepairOptions serial, parallel;
    parallel.solve.threads = 8;
    std::string a, b;
    try {
      for (const auto& m : repair(w.g, testing::ccv_shapes(), {}, serial).models) a += serialize_patch(m);
      for (const auto& m : repair(w.g, testing::ccv_shapes(), {}, parallel).models) b += serialize_patch(m);
    } catch (const UnrepairableError&) {
      continue;
    }
    EXPECT_EQ(a, b);
  }
}

}  // namespace
}  // namespace ccv::repair

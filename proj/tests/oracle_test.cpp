#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ossched/errors.hpp"
#include "ossched/oracle.hpp"

namespace ossched {
namespace {

TEST(BruteForceOriginal, HandExample) {
  const auto instance = testing::example_instance();
  const auto opt = brute_force_original(instance);
  EXPECT_NEAR(opt.total, 21.0, 1e-12);
  EXPECT_EQ(schedule_ids(instance, opt.schedule), (std::vector<std::string>{"b", "a", "c"}));
}

TEST(BruteForceOs, HandExample) {
  EXPECT_NEAR(brute_force_os(glue(testing::example_instance())).total, 21.0, 1e-12);
}

TEST(EnumerateClosedSets, Counts) {
  PrecInstance chain;
  chain.nodes = {{"a", 1, 1}, {"b", 1, 1}};
  chain.edges = {{0, 1}};
  EXPECT_EQ(enumerate_closed_sets(chain).size(), 3u);
  // {}, {s1}, {s2}, {s1,s2}, {s1,g2}, {s1,s2,g1}, {s1,s2,g2}, all four.
  std::vector<std::vector<std::size_t>> expected{{},        {0},       {1},       {0, 1},
                                                 {0, 3},    {0, 1, 2}, {0, 1, 3}, {0, 1, 2, 3}};
  std::vector<std::vector<std::size_t>> found;
  for (const auto& set : enumerate_closed_sets(testing::example_prec())) found.push_back(set.nodes);
  std::sort(found.begin(), found.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(found, expected);
  PrecInstance antichain;
  for (int i = 0; i < 6; ++i) antichain.nodes.push_back({"n" + std::to_string(i), 1, 1});
  EXPECT_EQ(enumerate_closed_sets(antichain).size(), 64u);
  double best = 0.0;
  for (const auto& set : enumerate_closed_sets(testing::example_prec()))
    if (!set.nodes.empty()) best = std::max(best, set.rho);
  EXPECT_NEAR(best, 1.0 / 3.0, 1e-12);
}

TEST(Guards, Exceeded) {
  Instance big{{{"f", 1.0}}, {}};
  for (int j = 0; j < 10; ++j)
    big.jobs.push_back({"j" + std::to_string(j), 1.0, {{"o" + std::to_string(j), 0, 1.0}}});
  EXPECT_THROW(brute_force_original(big), GuardExceededError);
  EXPECT_THROW(brute_force_os(glue(big)), GuardExceededError);
  PrecInstance antichain;
  for (int i = 0; i < 19; ++i) antichain.nodes.push_back({"n" + std::to_string(i), 1, 1});
  EXPECT_THROW(enumerate_closed_sets(antichain), GuardExceededError);
  EXPECT_THROW(brute_force_prec(antichain), GuardExceededError);
}

TEST(Relaxation, OsOptimumBelowOriginalOptimum) {
  for (const auto& instance : testing::small_corpus(200, 61))
    EXPECT_LE(brute_force_os(glue(instance)).total,
              brute_force_original(instance).total + 1e-9);
}

// Pruned search against plain enumeration of every permutation.
TEST(BruteForceOriginal, MatchesPlainEnumeration) {
  testing::SmallInstanceShape shape{4, 3, 2, 7};
  for (const auto& instance : testing::small_corpus(150, 62, shape)) {
    auto order = identity_schedule(instance).order;
    std::sort(order.begin(), order.end());
    double best = 0.0;
    std::vector<OpRef> best_order;
    do {
      const double total = evaluate_original(instance, Schedule{order}).total;
      if (best_order.empty() || total < best - 1e-12 * std::max(1.0, best)) {
        best = total;
        best_order = order;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    const auto opt = brute_force_original(instance);
    EXPECT_NEAR(opt.total, best, 1e-9);
    EXPECT_EQ(opt.schedule.order, best_order);
  }
}

}  // namespace
}  // namespace ossched

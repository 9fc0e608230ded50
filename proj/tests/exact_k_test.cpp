#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ossched/errors.hpp"
#include "ossched/exact_k.hpp"
#include "ossched/oracle.hpp"

namespace ossched {
namespace {

using testing::example_instance;

WsptKey key_of(const GluedInstance& glued, std::size_t j) {
  return {glued.jobs[j].total_processing, glued.jobs[j].weight, j};
}

double os_total(const GluedInstance& glued, const BlockSchedule& schedule) {
  return evaluate_os(glued, flatten(glued, schedule)).total;
}

std::size_t block_of(const BlockSchedule& schedule, std::size_t job) {
  for (std::size_t b = 0; b < schedule.blocks.size(); ++b)
    if (std::count(schedule.blocks[b].begin(), schedule.blocks[b].end(), job)) return b;
  return schedule.blocks.size();
}

// Every pair out of WSPT order must be forced by a setup.
void expect_generalized_wspt(const GluedInstance& glued, const BlockSchedule& schedule) {
  const auto flat = flatten(glued, schedule).order;
  std::vector<std::size_t> position(glued.jobs.size());
  for (std::size_t i = 0; i < flat.size(); ++i)
    if (flat[i].kind == OsItem::Kind::kJob) position[flat[i].index] = i;
  for (std::size_t a = 0; a < glued.jobs.size(); ++a)
    for (std::size_t b = 0; b < glued.jobs.size(); ++b)
      if (wspt_less(key_of(glued, a), key_of(glued, b)) && position[b] < position[a])
        EXPECT_LT(block_of(schedule, b), min_block(glued, schedule.tau, a));
}

// Same search as local_search, with every delta recomputed from scratch.
LocalSearchResult reference_local_search(const GluedInstance& glued, std::vector<std::size_t> tau,
                                         bool check_steps) {
  auto schedule = initial_schedule(glued, std::move(tau));
  const auto by_rank = schedule.blocks.back();
  double total_p = 0.0, total_w = 0.0;
  for (const auto& g : glued.jobs) total_p += g.total_processing, total_w += g.weight;
  for (const auto& s : glued.setups) total_p += s.processing_time;

  double cost = os_total(glued, schedule);
  for (auto j : by_rank) {
    const auto& g = glued.jobs[j];
    const auto first = min_block(glued, schedule.tau, j);
    std::vector<double> delta(schedule.blocks.size(), 0.0);
    double best = 0.0;
    for (std::size_t b = first; b < schedule.blocks.size(); ++b) {
      delta[b] = move_delta(glued, schedule, {j, b});
      best = std::min(best, delta[b]);
    }
    const double tolerance = 1e-12 * (g.weight * total_p + g.total_processing * total_w);
    if (!(best < -tolerance)) continue;
    std::size_t target = first;
    while (!(delta[target] <= best + tolerance)) ++target;
    schedule = apply_move(glued, schedule, {j, target});
    const double next = os_total(glued, schedule);
    if (check_steps) {
      EXPECT_LT(next, cost);
      expect_generalized_wspt(glued, schedule);
    }
    cost = next;
  }
  return {schedule, cost};
}

TEST(InitialSchedule, HandExample) {
  const auto glued = glue(example_instance());
  const auto schedule = initial_schedule(glued, {0, 1});
  ASSERT_EQ(schedule.blocks.size(), 3u);
  EXPECT_TRUE(schedule.blocks[0].empty());
  EXPECT_TRUE(schedule.blocks[1].empty());
  EXPECT_EQ(schedule.blocks[2], (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(initial_schedule(glued, {0, 0}), ParameterError);
  EXPECT_THROW(initial_schedule(glued, {0}), ParameterError);
}

TEST(MoveDelta, HandExamples) {
  const auto glued = glue(example_instance());
  const auto schedule = initial_schedule(glued, {0, 1});
  EXPECT_NEAR(move_delta(glued, schedule, {1, 1}), 1.0, 1e-12);
  EXPECT_EQ(move_delta(glued, schedule, {1, 2}), 0.0);
  EXPECT_THROW(move_delta(glued, schedule, {0, 1}), InfeasibleScheduleError);
  EXPECT_THROW(move_delta(glued, schedule, {1, 0}), InfeasibleScheduleError);
  const auto moved = apply_move(glued, schedule, {1, 1});
  EXPECT_NEAR(os_total(glued, moved), 22.0, 1e-12);
}

// Same prefix either way: the job ends up at the same completion time.
TEST(MoveDelta, ZeroSetupGivesZeroDelta) {
  Instance instance{{{"f", 1.0}, {"g", 0.0}},
                    {{"j1", 1.0, {{"a", 0, 1.0}}}, {"j2", 1.0, {{"b", 1, 1.0}}}}};
  const auto glued = glue(instance);
  const auto schedule = initial_schedule(glued, {0, 1});
  EXPECT_NEAR(move_delta(glued, schedule, {0, 1}), 0.0, 1e-12);
}

TEST(LocalSearch, HandExamples) {
  const auto glued = glue(example_instance());
  const auto first = local_search(glued, {0, 1});
  EXPECT_NEAR(first.total, 21.0, 1e-12);
  EXPECT_EQ(flatten(glued, first.schedule).order,
            (std::vector<OsItem>{OsItem::setup(0), OsItem::setup(1), OsItem::job(0), OsItem::job(1)}));
  const auto result = solve_exact_k(glued);
  EXPECT_NEAR(result.total, 21.0, 1e-12);
  EXPECT_EQ(result.tau, (std::vector<std::size_t>{0, 1}));
}

TEST(LocalSearch, MatchesReferenceAndKeepsInvariants) {
  std::mt19937_64 rng(41);
  testing::SmallInstanceShape shape{12, 4, 3, 24};
  for (int trial = 0; trial < 200; ++trial) {
    const auto glued = glue(testing::random_small_instance(rng, shape));
    std::vector<std::size_t> tau(glued.setups.size());
    for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = i;
    std::shuffle(tau.begin(), tau.end(), rng);
    const auto fast = local_search(glued, tau);
    const auto slow = reference_local_search(glued, tau, true);
    EXPECT_EQ(fast.schedule.blocks, slow.schedule.blocks);
    EXPECT_NEAR(fast.total, slow.total, 1e-9 * std::max(1.0, slow.total));
    EXPECT_LE(fast.total, os_total(glued, initial_schedule(glued, tau)) + 1e-9);
    expect_generalized_wspt(glued, fast.schedule);
  }
}

TEST(MoveDelta, ConsistentWithReevaluation) {
  std::mt19937_64 rng(42);
  testing::SmallInstanceShape shape{10, 4, 3, 20};
  for (int trial = 0; trial < 200; ++trial) {
    const auto glued = glue(testing::random_small_instance(rng, shape));
    std::vector<std::size_t> tau(glued.setups.size());
    for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = i;
    std::shuffle(tau.begin(), tau.end(), rng);
    auto schedule = initial_schedule(glued, tau);
    for (int step = 0; step < 10; ++step) {
      const auto job = std::uniform_int_distribution<std::size_t>(0, glued.jobs.size() - 1)(rng);
      const auto lo = min_block(glued, tau, job);
      const auto target =
          std::uniform_int_distribution<std::size_t>(lo, schedule.blocks.size() - 1)(rng);
      const double before = os_total(glued, schedule);
      const double delta = move_delta(glued, schedule, {job, target});
      schedule = apply_move(glued, schedule, {job, target});
      EXPECT_NEAR(os_total(glued, schedule), before + delta, 1e-9 * std::max(1.0, before));
    }
  }
}

TEST(SolveExactK, GuardAndSingleFamily) {
  Instance wide;
  for (int f = 0; f < 11; ++f) {
    wide.families.push_back({"f" + std::to_string(f), 1.0});
    wide.jobs.push_back({"j" + std::to_string(f), 1.0, {{"o" + std::to_string(f), std::size_t(f), 1.0}}});
  }
  EXPECT_THROW(solve_exact_k(glue(wide)), GuardExceededError);

  Instance single{{{"f", 2.0}},
                  {{"j1", 1.0, {{"a", 0, 3.0}}}, {"j2", 3.0, {{"b", 0, 1.0}}}}};
  const auto result = solve_exact_k(glue(single));
  // setup, then WSPT: j2 at 3, j1 at 6.
  EXPECT_NEAR(result.total, 3.0 * 3.0 + 6.0, 1e-12);
}

TEST(SolveExactK, EqualsBruteForce) {
  for (const auto& instance : testing::small_corpus(150, 43)) {
    const auto glued = glue(instance);
    const auto exact = solve_exact_k(glued);
    EXPECT_NO_THROW(check_os_schedule(glued, exact.schedule));
    EXPECT_NEAR(evaluate_os(glued, exact.schedule).total, exact.total, 1e-9);
    EXPECT_NEAR(exact.total, brute_force_os(glued).total, 1e-9);
  }
}

}  // namespace
}  // namespace ossched

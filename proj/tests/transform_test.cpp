#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ossched/errors.hpp"
#include "ossched/oracle.hpp"
#include "ossched/transform.hpp"

namespace ossched {
namespace {

using testing::example_instance;

const OsSchedule kExampleOs{{OsItem::setup(0), OsItem::setup(1), OsItem::job(0), OsItem::job(1)}};

std::vector<std::string> ids(const Instance& instance, const Schedule& schedule) {
  return schedule_ids(instance, schedule);
}

TEST(Ungle, HandExample) {
  const auto instance = example_instance();
  const auto glued = glue(instance);
  EXPECT_EQ(ids(instance, ungle(instance, glued, kExampleOs)),
            (std::vector<std::string>{"a", "b", "c"}));
  // f2 set up first: b moves in front of a inside j1.
  OsSchedule swapped{{OsItem::setup(1), OsItem::setup(0), OsItem::job(1), OsItem::job(0)}};
  EXPECT_EQ(ids(instance, ungle(instance, glued, swapped)),
            (std::vector<std::string>{"c", "b", "a"}));
}

TEST(Ungle, OneFamilyJobKeepsOperationOrder) {
  Instance instance{{{"f", 1.0}, {"g", 1.0}},
                    {{"j", 1.0, {{"x", 1, 1.0}, {"y", 0, 1.0}, {"z", 1, 1.0}}}}};
  const auto glued = glue(instance);
  OsSchedule os{{OsItem::setup(1), OsItem::setup(0), OsItem::job(0)}};
  EXPECT_EQ(ids(instance, ungle(instance, glued, os)), (std::vector<std::string>{"x", "z", "y"}));
}

TEST(Transform, HandExample) {
  const auto instance = example_instance();
  const auto glued = glue(instance);
  std::vector<OpRef> pulled;
  const auto out = transform(instance, glued, kExampleOs, PullFactor::guaranteed(), &pulled);
  EXPECT_TRUE(pulled.empty());
  EXPECT_EQ(ids(instance, out), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_NEAR(evaluate_original(instance, out).total, 22.0, 1e-9);
  EXPECT_LE(22.0, (1.0 + PullFactor::kSqrt2) * 21.0);
}

TEST(Transform, SingleFamilyCostsTheSameInBothModels) {
  Instance instance{{{"f", 2.0}},
                    {{"j1", 1.0, {{"a", 0, 3.0}}}, {"j2", 2.0, {{"b", 0, 1.0}, {"c", 0, 4.0}}}}};
  const auto glued = glue(instance);
  OsSchedule os{{OsItem::setup(0), OsItem::job(1), OsItem::job(0)}};
  const auto out = transform(instance, glued, os, PullFactor(2.0));
  EXPECT_EQ(setup_count(instance, out), 1u);
  EXPECT_NEAR(evaluate_original(instance, out).total, evaluate_os(glued, os).total, 1e-9);
}

TEST(Transform, TightnessInstancePullsLongOperation) {
  const auto tc = gen_tightness(3, 1e-3, PullFactor::kSqrt2);
  std::vector<OpRef> pulled;
  const auto out = transform(tc.instance, tc.glued, tc.os, PullFactor::guaranteed(), &pulled);
  EXPECT_EQ(ids(tc.instance, out), (std::vector<std::string>{"first_op", "last_op", "blue0_op",
                                                             "blue1_op", "blue2_op"}));
  const auto batches = batches_of(tc.instance, out);
  ASSERT_EQ(batches.size(), 2u);
  EXPECT_NEAR(batches[0].processing, PullFactor::kSqrt2 - 1e-3, 1e-12);
  ASSERT_EQ(pulled.size(), 1u);
}

TEST(GenTightness, RatioExamples) {
  auto ratio = [](std::size_t m, double eps) {
    const auto tc = gen_tightness(m, eps, PullFactor::kSqrt2);
    const auto out = transform(tc.instance, tc.glued, tc.os, PullFactor::guaranteed());
    return evaluate_original(tc.instance, out).total / evaluate_os(tc.glued, tc.os).total;
  };
  EXPECT_GT(ratio(1, 1e-3), 1.0);
  EXPECT_GE(ratio(10000, 1e-6), 0.99 * (1.0 + PullFactor::kSqrt2));
}

TEST(GenTightness, RejectsBadParameters) {
  EXPECT_THROW(gen_tightness(0, 1e-3, 2.0), ParameterError);
  EXPECT_THROW(gen_tightness(3, 0.0, 2.0), ParameterError);
  EXPECT_THROW(gen_tightness(3, -1.0, 2.0), ParameterError);
  EXPECT_THROW(gen_tightness(3, 1e-3, 1.2), ParameterError);
  EXPECT_THROW(gen_tightness(3, 1.0, 1.5), ParameterError);
}

TEST(PullFactor, Validation) {
  EXPECT_THROW(PullFactor(0.0), ParameterError);
  EXPECT_THROW(PullFactor(-1.0), ParameterError);
  EXPECT_THROW(PullFactor(std::nan("")), ParameterError);
  EXPECT_THROW(PullFactor{std::numeric_limits<double>::infinity()}, ParameterError);
  EXPECT_FALSE(PullFactor(1.0).has_guarantee());
  EXPECT_TRUE(PullFactor(1.41421356237309504880).has_guarantee());
}

// Output structure over random instances and random feasible OS schedules.
class TransformProperties : public ::testing::TestWithParam<double> {};

TEST_P(TransformProperties, Structure) {
  const double beta = GetParam();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto instance = testing::random_small_instance(rng);
    const auto glued = glue(instance);
    // Any original schedule yields a feasible OS schedule.
    const auto os = os_lower_bound_check(instance, testing::random_schedule(instance, rng));
    std::vector<OpRef> pulled;
    const auto out = transform(instance, glued, os, PullFactor(beta), &pulled);
    ASSERT_NO_THROW(check_schedule(instance, out));

    const auto batches = batches_of(instance, out);
    std::map<std::size_t, std::size_t> previous;
    for (std::size_t i = 0; i < batches.size(); ++i) {
      double sum = 0.0;
      for (auto ref : batches[i].ops) {
        EXPECT_EQ(operation_at(instance, ref).family, batches[i].family);
        sum += operation_at(instance, ref).processing_time;
      }
      EXPECT_NEAR(sum, batches[i].processing, 1e-9);
      const auto f = batches[i].family;
      if (auto it = previous.find(f); it != previous.end()) {
        const double combined = batches[it->second].processing + batches[i].processing;
        EXPECT_GE(combined + 1e-9, beta * instance.families[f].setup_time);
      }
      previous[f] = i;
    }

    const auto base = ungle(instance, glued, os);
    std::map<OpRef, std::size_t> base_pos, out_pos;
    for (std::size_t i = 0; i < base.order.size(); ++i) base_pos[base.order[i]] = i;
    for (std::size_t i = 0; i < out.order.size(); ++i) out_pos[out.order[i]] = i;
    // Within a family, the order never changes.
    for (auto x : out.order)
      for (auto y : out.order)
        if (operation_at(instance, x).family == operation_at(instance, y).family &&
            base_pos[x] < base_pos[y])
          EXPECT_LT(out_pos[x], out_pos[y]);
    // Operations left in place keep their relative order.
    const std::set<OpRef> moved(pulled.begin(), pulled.end());
    for (auto x : out.order)
      for (auto y : out.order)
        if (!moved.count(x) && !moved.count(y) && base_pos[x] < base_pos[y])
          EXPECT_LT(out_pos[x], out_pos[y]);
  }
}

class TransformGuarantee : public ::testing::TestWithParam<double> {};

TEST_P(TransformGuarantee, OptimalRelaxation) {
  const double beta = GetParam();
  for (const auto& instance : testing::small_corpus(150, 32)) {
    const auto glued = glue(instance);
    const auto opt = brute_force_os(glued);
    const auto out = transform(instance, glued, opt.schedule, PullFactor(beta));
    EXPECT_LE(evaluate_original(instance, out).total, (1.0 + beta) * opt.total + 1e-6);
  }
}

INSTANTIATE_TEST_SUITE_P(Betas, TransformProperties,
                         ::testing::Values(0.5, PullFactor::kSqrt2, 2.0, 3.0));
INSTANTIATE_TEST_SUITE_P(Betas, TransformGuarantee,
                         ::testing::Values(PullFactor::kSqrt2, 2.0, 3.0));

}  // namespace
}  // namespace ossched

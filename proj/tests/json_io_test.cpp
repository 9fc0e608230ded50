#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ossched/errors.hpp"
#include "ossched/json_io.hpp"

namespace ossched {
namespace {

bool same(const Instance& a, const Instance& b) {
  if (a.families.size() != b.families.size() || a.jobs.size() != b.jobs.size()) return false;
  for (std::size_t f = 0; f < a.families.size(); ++f)
    if (a.families[f].id != b.families[f].id || a.families[f].setup_time != b.families[f].setup_time)
      return false;
  for (std::size_t j = 0; j < a.jobs.size(); ++j) {
    const auto& x = a.jobs[j];
    const auto& y = b.jobs[j];
    if (x.id != y.id || x.weight != y.weight || x.operations.size() != y.operations.size())
      return false;
    for (std::size_t o = 0; o < x.operations.size(); ++o)
      if (x.operations[o].id != y.operations[o].id ||
          x.operations[o].family != y.operations[o].family ||
          x.operations[o].processing_time != y.operations[o].processing_time)
        return false;
  }
  return true;
}

std::string error_path(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const InstanceError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(ParseInstance, MinimalDocument) {
  const auto instance = parse_instance(
      R"({"families":[{"id":"f","setup":2}],"jobs":[{"id":"j","weight":1,"ops":[{"id":"o","family":"f","p":3}]}]})");
  ASSERT_EQ(instance.jobs.size(), 1u);
  EXPECT_EQ(instance.jobs[0].operations[0].family, 0u);
  EXPECT_DOUBLE_EQ(instance.families[0].setup_time, 2.0);
}

TEST(ParseInstance, ErrorsCarryPaths) {
  EXPECT_EQ(error_path(R"({"families":[{"id":"f","setup":2}],"jobs":[{"id":"j","weight":1,"ops":[{"id":"o","family":"g","p":3}]}]})"),
            "jobs[0].ops[0].family");
  EXPECT_EQ(error_path(R"({"families":[{"id":"f","setup":2}],"jobs":[{"id":"j","weight":-1,"ops":[{"id":"o","family":"f","p":3}]}]})"),
            "jobs[0].weight");
  EXPECT_EQ(error_path(R"({"families":[{"id":"f","setup":-2}],"jobs":[]})"), "families[0].setup");
  EXPECT_EQ(error_path(R"({"families":[{"id":"f","setup":2}],"jobs":[{"id":"j","weight":1,"ops":[{"id":"o","family":"f"}]}]})"),
            "jobs[0].ops[0].p");
  EXPECT_EQ(error_path(R"({"families":[],"jobs":[{"id":"j","weight":1,"ops":[]}]})"), "jobs[0].ops");
  EXPECT_EQ(error_path(R"({"families":[}"})"), "");
}

TEST(ParseInstance, RoundTrip) {
  const auto example = testing::example_instance();
  EXPECT_TRUE(same(parse_instance(serialize_instance(example)), example));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto instance = testing::random_small_instance(rng);
    EXPECT_TRUE(same(parse_instance(serialize_instance(instance)), instance));
  }
}

TEST(ScheduleJson, OriginalAndOneTimeSetup) {
  const auto instance = testing::example_instance();
  const auto schedule = schedule_from_json(instance, parse_json(R"({"order":["b","a","c"]})"));
  EXPECT_EQ(schedule_to_json(instance, schedule).dump(), R"({"order":["b","a","c"]})");

  const auto glued = glue(instance);
  const auto os = os_schedule_from_json(glued, parse_json(
      R"({"order":[{"kind":"setup","family":"f1"},{"kind":"job","job":"j2"},{"kind":"setup","family":"f2"},{"kind":"job","job":"j1"}]})"));
  EXPECT_EQ(os.order[1], OsItem::job(1));
  EXPECT_EQ(os_schedule_from_json(glued, os_schedule_to_json(glued, os)).order, os.order);
  EXPECT_THROW(os_schedule_from_json(glued, parse_json(
                   R"({"order":[{"kind":"job","job":"j1"},{"kind":"setup","family":"f1"},{"kind":"setup","family":"f2"},{"kind":"job","job":"j2"}]})")),
               InfeasibleScheduleError);
  EXPECT_THROW(os_schedule_from_json(glued, parse_json(R"({"order":[{"kind":"crate"}]})")),
               MalformedScheduleError);
}

TEST(EvaluationReport, Shape) {
  const auto instance = testing::example_instance();
  const auto report = evaluation_report(
      instance, evaluate_original(instance, schedule_from_ids(instance, std::vector<std::string>{"a", "b", "c"})));
  EXPECT_DOUBLE_EQ(report["total"].get<double>(), 22.0);
  EXPECT_DOUBLE_EQ(report["jobs"]["j2"].get<double>(), 10.0);
}

TEST(PrecJson, RoundTripAndErrors) {
  const auto prec = testing::example_prec();
  const auto back = prec_from_json(prec_to_json(prec));
  EXPECT_EQ(back.edges, prec.edges);
  EXPECT_EQ(back.nodes.size(), 4u);
  EXPECT_THROW(prec_from_json(parse_json(R"({"nodes":[{"id":"a","p":1,"w":0}],"edges":[["a","b"]]})")),
               InstanceError);
  EXPECT_THROW(prec_from_json(parse_json(
                   R"({"nodes":[{"id":"a","p":1,"w":0},{"id":"b","p":1,"w":0}],"edges":[["a","b"],["b","a"]]})")),
               InstanceError);
}

}  // namespace
}  // namespace ossched

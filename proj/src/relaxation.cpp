#include "ossched/relaxation.hpp"

#include <algorithm>
#include <limits>

#include "ossched/errors.hpp"

namespace ossched {

GluedInstance glue(const Instance& instance) {
  validate(instance);
  constexpr auto kUnused = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> setup_of(instance.families.size(), kUnused);
  std::vector<bool> used(instance.families.size(), false);
  for (const auto& job : instance.jobs)
    for (const auto& op : job.operations) used[op.family] = true;

  GluedInstance glued;
  for (std::size_t f = 0; f < instance.families.size(); ++f) {
    if (!used[f]) continue;
    setup_of[f] = glued.setups.size();
    glued.setups.push_back({instance.families[f].id, f, instance.families[f].setup_time});
  }
  glued.jobs.reserve(instance.jobs.size());
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    const auto& job = instance.jobs[j];
    GluedJob g{job.id, 0.0, job.weight, {}, {}};
    for (std::size_t o = 0; o < job.operations.size(); ++o) {
      g.total_processing += job.operations[o].processing_time;
      g.required_setups.push_back(setup_of[job.operations[o].family]);
      g.origin_ops.push_back({j, o});
    }
    std::sort(g.required_setups.begin(), g.required_setups.end());
    g.required_setups.erase(std::unique(g.required_setups.begin(), g.required_setups.end()),
                            g.required_setups.end());
    glued.jobs.push_back(std::move(g));
  }
  return glued;
}

void check_os_schedule(const GluedInstance& glued, const OsSchedule& schedule) {
  std::vector<bool> setup_done(glued.setups.size(), false);
  std::vector<bool> job_done(glued.jobs.size(), false);
  for (const auto& item : schedule.order) {
    if (item.kind == OsItem::Kind::kSetup) {
      if (item.index >= glued.setups.size())
        throw MalformedScheduleError("unknown setup operation");
      if (setup_done[item.index])
        throw MalformedScheduleError("setup for family '" +
                                     glued.setups[item.index].family_id +
                                     "' appears more than once");
      setup_done[item.index] = true;
    } else {
      if (item.index >= glued.jobs.size())
        throw MalformedScheduleError("unknown job");
      const auto& job = glued.jobs[item.index];
      if (job_done[item.index])
        throw MalformedScheduleError("job '" + job.job_id + "' appears more than once");
      for (auto s : job.required_setups)
        if (!setup_done[s])
          throw InfeasibleScheduleError("job '" + job.job_id +
                                        "' is scheduled before the setup of family '" +
                                        glued.setups[s].family_id + "'");
      job_done[item.index] = true;
    }
  }
  if (schedule.order.size() != glued.setups.size() + glued.jobs.size())
    throw MalformedScheduleError("schedule does not contain every job and setup");
}

Evaluation evaluate_os(const GluedInstance& glued, const OsSchedule& schedule) {
  check_os_schedule(glued, schedule);
  Evaluation result;
  result.job_completion.assign(glued.jobs.size(), 0.0);
  double time = 0.0;
  for (const auto& item : schedule.order) {
    if (item.kind == OsItem::Kind::kSetup) {
      time += glued.setups[item.index].processing_time;
    } else {
      time += glued.jobs[item.index].total_processing;
      result.job_completion[item.index] = time;
      result.total += glued.jobs[item.index].weight * time;
    }
  }
  return result;
}

OsSchedule os_lower_bound_check(const Instance& instance,
                                const Schedule& schedule) {
  check_schedule(instance, schedule);
  const auto glued = glue(instance);
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> setup_of(instance.families.size(), kNone);
  for (std::size_t s = 0; s < glued.setups.size(); ++s) setup_of[glued.setups[s].family] = s;

  // Each setup goes right before its family's first operation, each glued
  // job at its last operation. Sort keys 2*pos and 2*pos+1 keep setups ahead.
  std::vector<std::pair<std::size_t, OsItem>> keyed;
  std::vector<std::size_t> last_position(instance.jobs.size(), 0);
  std::vector<bool> setup_placed(glued.setups.size(), false);
  for (std::size_t pos = 0; pos < schedule.order.size(); ++pos) {
    const auto ref = schedule.order[pos];
    const auto s = setup_of[operation_at(instance, ref).family];
    if (!setup_placed[s]) {
      setup_placed[s] = true;
      keyed.emplace_back(2 * pos, OsItem::setup(s));
    }
    last_position[ref.job] = pos;
  }
  for (std::size_t j = 0; j < instance.jobs.size(); ++j)
    keyed.emplace_back(2 * last_position[j] + 1, OsItem::job(j));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  OsSchedule result;
  result.order.reserve(keyed.size());
  for (const auto& entry : keyed) result.order.push_back(entry.second);
  return result;
}

}  // namespace ossched

#include "ossched/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "ossched/errors.hpp"

namespace ossched {

std::size_t Instance::operation_count() const {
  std::size_t count = 0;
  for (const auto& job : jobs) count += job.operations.size();
  return count;
}

void validate(const Instance& instance) {
  std::unordered_set<std::string> family_ids;
  for (std::size_t f = 0; f < instance.families.size(); ++f) {
    const auto path = "families[" + std::to_string(f) + "]";
    const auto& family = instance.families[f];
    if (!family_ids.insert(family.id).second)
      throw InstanceError(path + ".id", "duplicate family id '" + family.id + "'");
    if (!(family.setup_time >= 0.0))
      throw InstanceError(path + ".setup", "setup time must be nonnegative");
  }
  std::unordered_set<std::string> job_ids;
  std::unordered_set<std::string> op_ids;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    const auto path = "jobs[" + std::to_string(j) + "]";
    const auto& job = instance.jobs[j];
    if (!job_ids.insert(job.id).second)
      throw InstanceError(path + ".id", "duplicate job id '" + job.id + "'");
    if (!(job.weight >= 0.0))
      throw InstanceError(path + ".weight", "weight must be nonnegative");
    if (job.operations.empty())
      throw InstanceError(path + ".ops", "job has no operations");
    for (std::size_t o = 0; o < job.operations.size(); ++o) {
      const auto op_path = path + ".ops[" + std::to_string(o) + "]";
      const auto& op = job.operations[o];
      if (!op_ids.insert(op.id).second)
        throw InstanceError(op_path + ".id", "duplicate operation id '" + op.id + "'");
      if (op.family >= instance.families.size())
        throw InstanceError(op_path + ".family", "unknown family");
      if (!(op.processing_time >= 0.0))
        throw InstanceError(op_path + ".p", "processing time must be nonnegative");
    }
  }
}

const Operation& operation_at(const Instance& instance, OpRef ref) {
  return instance.jobs.at(ref.job).operations.at(ref.op);
}

void check_schedule(const Instance& instance, const Schedule& schedule) {
  std::vector<std::size_t> offset(instance.jobs.size() + 1, 0);
  for (std::size_t j = 0; j < instance.jobs.size(); ++j)
    offset[j + 1] = offset[j] + instance.jobs[j].operations.size();
  std::vector<bool> seen(offset.back(), false);
  for (const auto& ref : schedule.order) {
    if (ref.job >= instance.jobs.size() ||
        ref.op >= instance.jobs[ref.job].operations.size())
      throw MalformedScheduleError("schedule references an unknown operation");
    const auto slot = offset[ref.job] + ref.op;
    if (seen[slot])
      throw MalformedScheduleError("operation '" + operation_at(instance, ref).id +
                                   "' appears more than once");
    seen[slot] = true;
  }
  if (schedule.order.size() != offset.back())
    throw MalformedScheduleError("schedule is missing " +
                                 std::to_string(offset.back() - schedule.order.size()) +
                                 " operation(s)");
}

Schedule schedule_from_ids(const Instance& instance,
                           std::span<const std::string> ids) {
  std::unordered_map<std::string, OpRef> by_id;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j)
    for (std::size_t o = 0; o < instance.jobs[j].operations.size(); ++o)
      by_id.emplace(instance.jobs[j].operations[o].id, OpRef{j, o});
  Schedule schedule;
  schedule.order.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw MalformedScheduleError("unknown operation id '" + id + "'");
    schedule.order.push_back(it->second);
  }
  check_schedule(instance, schedule);
  return schedule;
}

std::vector<std::string> schedule_ids(const Instance& instance,
                                      const Schedule& schedule) {
  std::vector<std::string> ids;
  ids.reserve(schedule.order.size());
  for (const auto& ref : schedule.order) ids.push_back(operation_at(instance, ref).id);
  return ids;
}

Evaluation evaluate_original(const Instance& instance,
                             const Schedule& schedule) {
  check_schedule(instance, schedule);
  Evaluation result;
  result.job_completion.assign(instance.jobs.size(), 0.0);
  double time = 0.0;
  std::size_t previous_family = instance.families.size();  // none yet
  for (const auto& ref : schedule.order) {
    const auto& op = operation_at(instance, ref);
    if (op.family != previous_family) time += instance.families[op.family].setup_time;
    time += op.processing_time;
    previous_family = op.family;
    result.job_completion[ref.job] = std::max(result.job_completion[ref.job], time);
  }
  for (std::size_t j = 0; j < instance.jobs.size(); ++j)
    result.total += instance.jobs[j].weight * result.job_completion[j];
  return result;
}

std::size_t setup_count(const Instance& instance, const Schedule& schedule) {
  std::size_t count = 0;
  std::size_t previous_family = instance.families.size();
  for (const auto& ref : schedule.order) {
    const auto family = operation_at(instance, ref).family;
    if (family != previous_family) ++count;
    previous_family = family;
  }
  return count;
}

Schedule identity_schedule(const Instance& instance) {
  Schedule schedule;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j)
    for (std::size_t o = 0; o < instance.jobs[j].operations.size(); ++o)
      schedule.order.push_back({j, o});
  return schedule;
}

bool wspt_less(const WsptKey& a, const WsptKey& b) {
  const bool a_infinite = a.weight == 0.0;
  const bool b_infinite = b.weight == 0.0;
  if (a_infinite != b_infinite) return b_infinite;
  if (!a_infinite) {
    const double lhs = a.processing * b.weight;
    const double rhs = b.processing * a.weight;
    if (lhs != rhs) return lhs < rhs;
  }
  return a.index < b.index;
}

std::vector<std::string> wspt_order(std::span<const WsptEntry> jobs) {
  std::vector<std::size_t> idx(jobs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return wspt_less({jobs[a].processing, jobs[a].weight, a},
                     {jobs[b].processing, jobs[b].weight, b});
  });
  std::vector<std::string> ids;
  ids.reserve(idx.size());
  for (auto i : idx) ids.push_back(jobs[i].id);
  return ids;
}

}  // namespace ossched

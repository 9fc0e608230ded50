#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ossched {

struct Family {
  std::string id;
  double setup_time = 0.0;
};

struct Operation {
  std::string id;
  std::size_t family = 0;  // index into Instance::families
  double processing_time = 0.0;
};

struct Job {
  std::string id;
  double weight = 0.0;
  std::vector<Operation> operations;
};

// A single-machine order scheduling instance. Jobs are indexed by their
// position in `jobs`; that index is also the tie-break index for WSPT.
struct Instance {
  std::vector<Family> families;
  std::vector<Job> jobs;

  std::size_t operation_count() const;
};

// Throws InstanceError on the first violated invariant: unique ids, family
// indices in range, nonnegative times and weights, nonempty jobs.
void validate(const Instance& instance);

// Identifies an operation by (job index, position within the job).
struct OpRef {
  std::size_t job = 0;
  std::size_t op = 0;

  friend bool operator==(const OpRef&, const OpRef&) = default;
  friend auto operator<=>(const OpRef&, const OpRef&) = default;
};

// Processing order of all operations under the original cost model. Setups
// are implicit.
struct Schedule {
  std::vector<OpRef> order;
};

struct Evaluation {
  double total = 0.0;
  std::vector<double> job_completion;  // indexed like the jobs
};

const Operation& operation_at(const Instance& instance, OpRef ref);

// Throws MalformedScheduleError unless `schedule` is a bijection onto the
// operations of `instance`.
void check_schedule(const Instance& instance, const Schedule& schedule);

// Resolves operation ids. Throws MalformedScheduleError on unknown ids and
// on duplicate or missing entries.
Schedule schedule_from_ids(const Instance& instance,
                           std::span<const std::string> ids);
std::vector<std::string> schedule_ids(const Instance& instance,
                                      const Schedule& schedule);

// Total weighted completion time with a setup of s(f) before the first
// operation and before every change of family.
Evaluation evaluate_original(const Instance& instance,
                             const Schedule& schedule);

// Number of setups the original cost model charges for `schedule`.
std::size_t setup_count(const Instance& instance, const Schedule& schedule);

// Every operation in job order: the identity schedule.
Schedule identity_schedule(const Instance& instance);

// Weighted shortest processing time ordering. Ratios p/w are compared by
// cross-multiplication; w == 0 means ratio +inf. Equal ratios keep the
// lower index first.
struct WsptKey {
  double processing = 0.0;
  double weight = 0.0;
  std::size_t index = 0;
};

bool wspt_less(const WsptKey& a, const WsptKey& b);

struct WsptEntry {
  std::string id;
  double processing = 0.0;
  double weight = 0.0;
};

std::vector<std::string> wspt_order(std::span<const WsptEntry> jobs);

}  // namespace ossched

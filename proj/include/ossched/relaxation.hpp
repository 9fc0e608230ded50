#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ossched/model.hpp"

namespace ossched {

// A job collapsed into one operation. Lossless for the one-time-setup model.
struct GluedJob {
  std::string job_id;
  double total_processing = 0.0;
  double weight = 0.0;
  std::vector<std::size_t> required_setups;  // sorted indices into setup_ops
  std::vector<OpRef> origin_ops;
};

struct SetupOp {
  std::string family_id;
  std::size_t family = 0;  // index into the original Instance::families
  double processing_time = 0.0;
};

// One-time-setup relaxation. Glued job g must follow every setup in
// g.required_setups; setups carry zero weight. Only families used by some
// job get a setup operation.
struct GluedInstance {
  std::vector<GluedJob> jobs;
  std::vector<SetupOp> setups;
};

struct OsItem {
  enum class Kind { kSetup, kJob };
  Kind kind = Kind::kJob;
  std::size_t index = 0;  // into GluedInstance::setups or ::jobs

  static OsItem setup(std::size_t i) { return {Kind::kSetup, i}; }
  static OsItem job(std::size_t i) { return {Kind::kJob, i}; }

  friend bool operator==(const OsItem&, const OsItem&) = default;
};

struct OsSchedule {
  std::vector<OsItem> order;
};

GluedInstance glue(const Instance& instance);

// Throws MalformedScheduleError for a non-permutation and
// InfeasibleScheduleError when a job precedes one of its setups.
void check_os_schedule(const GluedInstance& glued, const OsSchedule& schedule);

// Completion of every item is the prefix sum of processing times; the total
// counts glued jobs only.
Evaluation evaluate_os(const GluedInstance& glued, const OsSchedule& schedule);

// Constructive relaxation witness for an original schedule: each job is glued
// at the position of its last operation and each family's setup sits where
// that family is first set up. Its OS cost never exceeds the original cost.
OsSchedule os_lower_bound_check(const Instance& instance,
                                const Schedule& schedule);

}  // namespace ossched

#pragma once

#include <cstddef>
#include <vector>

#include "ossched/model.hpp"
#include "ossched/relaxation.hpp"

namespace ossched {

// Maximal run of consecutive operations of one family.
struct Batch {
  std::size_t family = 0;
  std::vector<OpRef> ops;
  double processing = 0.0;
};

// Threshold multiplier for batch filling. The (1 + beta) guarantee holds for
// beta >= sqrt(2); any positive value is accepted.
class PullFactor {
 public:
  explicit PullFactor(double beta);
  static PullFactor guaranteed() { return PullFactor(kSqrt2); }

  double value() const noexcept { return beta_; }
  bool has_guarantee() const noexcept { return beta_ >= kSqrt2 - 1e-12; }

  static constexpr double kSqrt2 = 1.41421356237309504880;

 private:
  double beta_;
};

std::vector<Batch> batches_of(const Instance& instance, const Schedule& schedule);

// Drops setups and splits every glued job into its operations, grouped by
// family in the order the families were set up in `os`.
Schedule ungle(const Instance& instance, const GluedInstance& glued,
               const OsSchedule& os);

// Batch filling: walking the batches front to back, a batch of family f
// takes the earliest later operations of f while its length stays below
// beta * s(f) (zero-length operations always fit; s(f) = 0 never pulls).
// Emptied batches vanish and their same-family neighbours merge. Pulled
// operations are appended to `pulled` when given.
Schedule transform(const Instance& instance, const GluedInstance& glued,
                   const OsSchedule& os, PullFactor beta,
                   std::vector<OpRef>* pulled = nullptr);

// Instance on which transform loses close to the full (1 + beta) factor.
struct TightnessCase {
  Instance instance;
  GluedInstance glued;
  OsSchedule os;
};

// m blue jobs of length eps between a short and a long job of family A.
// Requires m >= 1, 0 < eps, 2 * eps < beta and beta >= sqrt(2).
TightnessCase gen_tightness(std::size_t m, double eps, double beta);

}  // namespace ossched

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ossched/model.hpp"
#include "ossched/relaxation.hpp"
#include "ossched/transform.hpp"

namespace ossched {

struct PrecNode {
  std::string id;
  double processing = 0.0;
  double weight = 0.0;
};

// Single-machine scheduling with precedence constraints (1|prec|sum wC).
struct PrecInstance {
  std::vector<PrecNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // pred -> succ

  std::vector<std::vector<std::size_t>> predecessors() const;
};

// Unique ids, nonnegative data, edges in range, acyclic.
void validate(const PrecInstance& prec);

// Setups become nodes (s(f), 0) listed first, in setup order; glued jobs
// follow in job order. Edges run setup -> job.
PrecInstance to_prec(const GluedInstance& glued);

// Node indices produced by to_prec mapped back to the relaxation.
OsSchedule os_from_prec_order(const GluedInstance& glued,
                              std::span<const std::size_t> order);

// Total weighted completion time of a node order; throws
// InfeasibleScheduleError if the order violates a precedence.
double evaluate_prec(const PrecInstance& prec, std::span<const std::size_t> order);

bool is_closed(const PrecInstance& prec, std::span<const std::size_t> nodes);

struct ClosureResult {
  std::vector<std::size_t> nodes;  // sorted
  double value = 0.0;
};

// Predecessor-closed set of maximum total value via one minimum cut. Among
// optimal sets the inclusion-maximal one is returned; the empty set is
// allowed.
ClosureResult max_weight_closure(const PrecInstance& prec, std::span<const double> value);

struct DensityResult {
  std::vector<std::size_t> nodes;  // sorted, nonempty
  double rho = 0.0;                // +inf for zero-length sets with weight
  std::vector<double> lambdas;     // Dinkelbach iterates
};

// Nonempty closed set maximizing w(S) / p(S), the inclusion-maximal one on
// ties. Throws ParameterError for an empty instance.
DensityResult max_density_initial_set(const PrecInstance& prec);

struct SidneyBlock {
  std::vector<std::size_t> nodes;  // in scheduled order
  double rho = 0.0;
};

// Repeatedly peels off the max-density initial set of the remaining nodes;
// each block is list-scheduled, choosing the available node first in WSPT
// order.
std::vector<SidneyBlock> sidney_decomposition(const PrecInstance& prec);
std::vector<std::size_t> sidney_schedule(const PrecInstance& prec);

struct AnyKResult {
  Schedule schedule;
  double total = 0.0;
  OsSchedule os;
  double os_total = 0.0;
};

// glue -> to_prec -> sidney_schedule -> transform.
AnyKResult solve_any_k(const Instance& instance, PullFactor beta);

}  // namespace ossched

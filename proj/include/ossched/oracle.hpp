#pragma once

#include <cstddef>
#include <vector>

#include "ossched/model.hpp"
#include "ossched/prec_approx.hpp"
#include "ossched/relaxation.hpp"

namespace ossched {

// Size limits for the exhaustive searches below.
struct SearchGuard {
  std::size_t max_items = 9;
  std::size_t max_closed_sets = std::size_t{1} << 18;
};

struct OriginalOptimum {
  Schedule schedule;
  double total = 0.0;
};

// Exhaustive minimization over all operation orders (with bound pruning).
// Among minimizers the lexicographically smallest order of operation
// positions (job-major) is returned.
OriginalOptimum brute_force_original(const Instance& instance, const SearchGuard& guard = {});

struct OsOptimum {
  OsSchedule schedule;
  double total = 0.0;
};

// Exhaustive minimization over precedence-feasible interleavings of setups
// (listed first) and glued jobs; infeasible prefixes are cut immediately.
OsOptimum brute_force_os(const GluedInstance& glued, const SearchGuard& guard = {});

struct PrecOptimum {
  std::vector<std::size_t> order;
  double total = 0.0;
};

// Exhaustive minimization over the topological orders of a precedence DAG.
PrecOptimum brute_force_prec(const PrecInstance& prec, const SearchGuard& guard = {});

struct ClosedSet {
  std::vector<std::size_t> nodes;  // sorted
  double weight = 0.0;
  double processing = 0.0;
  double rho = 0.0;  // w/p; +inf when p = 0 < w; NaN when both are zero
};

// Every predecessor-closed subset, the empty set included.
std::vector<ClosedSet> enumerate_closed_sets(const PrecInstance& prec,
                                             const SearchGuard& guard = {});

}  // namespace ossched

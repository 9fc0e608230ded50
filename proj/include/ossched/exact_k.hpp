#pragma once

#include <cstddef>
#include <vector>

#include "ossched/relaxation.hpp"

namespace ossched {

// Jobs between consecutive setups of a fixed setup order `tau`. Block l
// holds the jobs run after the first l setups (block 0 precedes every
// setup), each block in WSPT order.
struct BlockSchedule {
  std::vector<std::size_t> tau;                  // setup indices
  std::vector<std::vector<std::size_t>> blocks;  // tau.size() + 1 blocks
};

struct Move {
  std::size_t job = 0;
  std::size_t target_block = 0;
};

// Earliest block a job may occupy under `tau`: the position of its last
// required setup.
std::size_t min_block(const GluedInstance& glued, const std::vector<std::size_t>& tau,
                      std::size_t job);

// All jobs after all setups, in WSPT order. Throws ParameterError unless tau
// is a permutation of the setups.
BlockSchedule initial_schedule(const GluedInstance& glued, std::vector<std::size_t> tau);

// Change of the total weighted completion time if `move.job` is reinserted
// at its WSPT position in the target block. Does not modify `schedule`.
// Throws InfeasibleScheduleError for a block before min_block.
double move_delta(const GluedInstance& glued, const BlockSchedule& schedule, Move move);

BlockSchedule apply_move(const GluedInstance& glued, BlockSchedule schedule, Move move);

OsSchedule flatten(const GluedInstance& glued, const BlockSchedule& schedule);

struct LocalSearchResult {
  BlockSchedule schedule;
  double total = 0.0;
};

// One greediest+ move per job in WSPT order starting from initial_schedule:
// the most improving block, ties to the earliest block; a job without an
// improving move stays. Optimal among schedules consistent with `tau`.
LocalSearchResult local_search(const GluedInstance& glued, std::vector<std::size_t> tau);

struct ExactKOptions {
  std::size_t max_families = 10;
};

struct ExactKResult {
  OsSchedule schedule;
  double total = 0.0;
  std::vector<std::size_t> tau;
};

// Runs local_search for every setup order and keeps the cheapest (first in
// lexicographic order on ties). Throws GuardExceededError when the number of
// setups exceeds options.max_families.
ExactKResult solve_exact_k(const GluedInstance& glued, const ExactKOptions& options = {});

}  // namespace ossched

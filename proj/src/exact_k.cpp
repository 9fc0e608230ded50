#include "ossched/exact_k.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ossched/errors.hpp"
#include "ossched/model.hpp"

namespace ossched {
namespace {

WsptKey key_of(const GluedInstance& glued, std::size_t j) {
  return {glued.jobs[j].total_processing, glued.jobs[j].weight, j};
}

void check_tau(const GluedInstance& glued, const std::vector<std::size_t>& tau) {
  std::vector<bool> seen(glued.setups.size(), false);
  for (auto s : tau) {
    if (s >= glued.setups.size() || seen[s])
      throw ParameterError("setup order is not a permutation of the families");
    seen[s] = true;
  }
  if (tau.size() != glued.setups.size())
    throw ParameterError("setup order is not a permutation of the families");
}

std::vector<std::size_t> min_blocks(const GluedInstance& glued,
                                    const std::vector<std::size_t>& tau) {
  std::vector<std::size_t> position(glued.setups.size(), 0);
  for (std::size_t i = 0; i < tau.size(); ++i) position[tau[i]] = i + 1;
  std::vector<std::size_t> result(glued.jobs.size(), 0);
  for (std::size_t j = 0; j < glued.jobs.size(); ++j)
    for (auto s : glued.jobs[j].required_setups) result[j] = std::max(result[j], position[s]);
  return result;
}

// Cost of placing `job` at its WSPT slot in `block`, counted against the
// schedule with `job` removed: w(job) * C(job) + p(job) * (weight behind it).
double insertion_cost(const GluedInstance& glued, const BlockSchedule& schedule,
                      std::size_t job, std::size_t block) {
  const auto key = key_of(glued, job);
  double total_weight = 0.0;
  for (const auto& b : schedule.blocks)
    for (auto k : b)
      if (k != job) total_weight += glued.jobs[k].weight;

  double time = 0.0;
  double weight_before = 0.0;
  for (std::size_t b = 0; b < schedule.blocks.size(); ++b) {
    if (b > 0) time += glued.setups[schedule.tau[b - 1]].processing_time;
    for (auto k : schedule.blocks[b]) {
      if (k == job) continue;
      if (b == block && wspt_less(key, key_of(glued, k))) break;
      time += glued.jobs[k].total_processing;
      weight_before += glued.jobs[k].weight;
    }
    if (b == block) break;
  }
  const auto& g = glued.jobs[job];
  return g.weight * (time + g.total_processing) +
         g.total_processing * (total_weight - weight_before);
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0.0) {}

  void add(std::size_t i, double v) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += v;
  }
  // Sum over [0, i).
  double prefix(std::size_t i) const {
    double s = 0.0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<double> tree_;
};

}  // namespace

std::size_t min_block(const GluedInstance& glued, const std::vector<std::size_t>& tau,
                      std::size_t job) {
  check_tau(glued, tau);
  return min_blocks(glued, tau).at(job);
}

BlockSchedule initial_schedule(const GluedInstance& glued, std::vector<std::size_t> tau) {
  check_tau(glued, tau);
  BlockSchedule schedule;
  schedule.blocks.resize(tau.size() + 1);
  schedule.tau = std::move(tau);
  auto& last = schedule.blocks.back();
  last.resize(glued.jobs.size());
  std::iota(last.begin(), last.end(), std::size_t{0});
  std::sort(last.begin(), last.end(), [&](std::size_t a, std::size_t b) {
    return wspt_less(key_of(glued, a), key_of(glued, b));
  });
  return schedule;
}

double move_delta(const GluedInstance& glued, const BlockSchedule& schedule, Move move) {
  check_tau(glued, schedule.tau);
  if (move.target_block >= schedule.blocks.size())
    throw InfeasibleScheduleError("target block out of range");
  if (move.target_block < min_blocks(glued, schedule.tau).at(move.job))
    throw InfeasibleScheduleError("job '" + glued.jobs[move.job].job_id +
                                  "' cannot run before all of its setups");
  std::size_t current = schedule.blocks.size();
  for (std::size_t b = 0; b < schedule.blocks.size(); ++b)
    if (std::find(schedule.blocks[b].begin(), schedule.blocks[b].end(), move.job) !=
        schedule.blocks[b].end())
      current = b;
  if (current == schedule.blocks.size())
    throw ParameterError("job is not part of the block schedule");
  if (current == move.target_block) return 0.0;
  return insertion_cost(glued, schedule, move.job, move.target_block) -
         insertion_cost(glued, schedule, move.job, current);
}

BlockSchedule apply_move(const GluedInstance& glued, BlockSchedule schedule, Move move) {
  if (move.target_block < min_blocks(glued, schedule.tau).at(move.job))
    throw InfeasibleScheduleError("job '" + glued.jobs[move.job].job_id +
                                  "' cannot run before all of its setups");
  for (auto& block : schedule.blocks) std::erase(block, move.job);
  auto& target = schedule.blocks.at(move.target_block);
  const auto key = key_of(glued, move.job);
  auto pos = std::find_if(target.begin(), target.end(), [&](std::size_t k) {
    return wspt_less(key, key_of(glued, k));
  });
  target.insert(pos, move.job);
  return schedule;
}

OsSchedule flatten(const GluedInstance& glued, const BlockSchedule& schedule) {
  (void)glued;
  OsSchedule os;
  for (std::size_t b = 0; b < schedule.blocks.size(); ++b) {
    if (b > 0) os.order.push_back(OsItem::setup(schedule.tau[b - 1]));
    for (auto j : schedule.blocks[b]) os.order.push_back(OsItem::job(j));
  }
  return os;
}

LocalSearchResult local_search(const GluedInstance& glued, std::vector<std::size_t> tau) {
  auto initial = initial_schedule(glued, std::move(tau));
  const auto n = glued.jobs.size();
  const auto k = initial.tau.size();
  const auto earliest = min_blocks(glued, initial.tau);
  const auto& by_rank = initial.blocks.back();  // WSPT order

  std::vector<double> setup_before(k + 1, 0.0);  // setup time preceding block b
  for (std::size_t b = 1; b <= k; ++b)
    setup_before[b] = setup_before[b - 1] + glued.setups[initial.tau[b - 1]].processing_time;

  // Per-block sums indexed by WSPT rank; block membership order is rank order.
  std::vector<Fenwick> p_tree(k + 1, Fenwick(n));
  std::vector<Fenwick> w_tree(k + 1, Fenwick(n));
  std::vector<double> block_p(k + 1, 0.0);
  std::vector<double> block_w(k + 1, 0.0);
  std::vector<std::size_t> block_of(n, k);
  double total_p = 0.0;
  double total_w = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& g = glued.jobs[by_rank[r]];
    p_tree[k].add(r, g.total_processing);
    w_tree[k].add(r, g.weight);
    block_p[k] += g.total_processing;
    block_w[k] += g.weight;
    total_p += g.total_processing;
    total_w += g.weight;
  }
  total_p += setup_before[k];

  std::vector<double> start(k + 1);
  std::vector<double> weight_after(k + 1);
  std::vector<double> delta(k + 1);
  for (std::size_t r = 0; r < n; ++r) {
    const auto j = by_rank[r];
    const auto& g = glued.jobs[j];
    const auto current = block_of[j];
    p_tree[current].add(r, -g.total_processing);
    w_tree[current].add(r, -g.weight);
    block_p[current] -= g.total_processing;
    block_w[current] -= g.weight;

    double p_acc = 0.0;
    for (std::size_t b = 0; b <= k; ++b) {
      start[b] = p_acc + setup_before[b];
      p_acc += block_p[b];
    }
    double w_acc = 0.0;
    for (std::size_t b = k + 1; b-- > 0;) {
      weight_after[b] = w_acc;
      w_acc += block_w[b];
    }
    auto insertion = [&](std::size_t b) {
      const double completion = start[b] + p_tree[b].prefix(r) + g.total_processing;
      const double behind = block_w[b] - w_tree[b].prefix(r) + weight_after[b];
      return g.weight * completion + g.total_processing * behind;
    };
    const double stay = insertion(current);
    double best = 0.0;
    for (std::size_t b = earliest[j]; b <= k; ++b) {
      delta[b] = b == current ? 0.0 : insertion(b) - stay;
      best = std::min(best, delta[b]);
    }
    const double tolerance = 1e-12 * (g.weight * total_p + g.total_processing * total_w);
    std::size_t target = current;
    if (best < -tolerance) {
      for (std::size_t b = earliest[j]; b <= k; ++b)
        if (delta[b] <= best + tolerance) {
          target = b;
          break;
        }
    }
    p_tree[target].add(r, g.total_processing);
    w_tree[target].add(r, g.weight);
    block_p[target] += g.total_processing;
    block_w[target] += g.weight;
    block_of[j] = target;
  }

  LocalSearchResult result;
  result.schedule.tau = initial.tau;
  result.schedule.blocks.resize(k + 1);
  for (auto j : by_rank) result.schedule.blocks[block_of[j]].push_back(j);
  result.total = evaluate_os(glued, flatten(glued, result.schedule)).total;
  return result;
}

ExactKResult solve_exact_k(const GluedInstance& glued, const ExactKOptions& options) {
  if (glued.setups.size() > options.max_families)
    throw GuardExceededError(std::to_string(glued.setups.size()) +
                             " families exceed the exact solver limit of " +
                             std::to_string(options.max_families) +
                             "; use the Sidney-decomposition approximation instead");
  std::vector<std::size_t> tau(glued.setups.size());
  std::iota(tau.begin(), tau.end(), std::size_t{0});
  ExactKResult best;
  bool have_best = false;
  do {
    auto candidate = local_search(glued, tau);
    const double tolerance = 1e-12 * std::max(1.0, std::abs(best.total));
    if (!have_best || candidate.total < best.total - tolerance) {
      best.total = candidate.total;
      best.tau = tau;
      best.schedule = flatten(glued, candidate.schedule);
      have_best = true;
    }
  } while (std::next_permutation(tau.begin(), tau.end()));
  return best;
}

}  // namespace ossched

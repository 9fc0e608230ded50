#include "ossched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ossched/errors.hpp"

namespace ossched {
namespace {

void check_guard(std::size_t items, const SearchGuard& guard) {
  if (items > guard.max_items)
    throw GuardExceededError(std::to_string(items) + " items exceed the brute-force limit of " +
                             std::to_string(guard.max_items));
}

double tie_tolerance(double best) { return 1e-12 * std::max(1.0, std::abs(best)); }

// Depth-first search over the topological orders of a small DAG, pruned by
// the bound "every open item finishes no earlier than now + its length".
class TopologicalSearch {
 public:
  TopologicalSearch(std::vector<double> p, std::vector<double> w,
                    std::vector<std::vector<std::size_t>> preds)
      : p_(std::move(p)), w_(std::move(w)), preds_(std::move(preds)),
        done_(p_.size(), false), current_() {
    for (std::size_t v = 0; v < p_.size(); ++v) {
      open_weight_ += w_[v];
      open_bound_ += w_[v] * p_[v];
    }
  }

  PrecOptimum run() {
    search(0.0, 0.0);
    return {best_order_, best_};
  }

 private:
  void search(double time, double cost) {
    if (current_.size() == p_.size()) {
      if (!found_ || cost < best_ - tie_tolerance(best_)) {
        found_ = true;
        best_ = cost;
        best_order_ = current_;
      }
      return;
    }
    if (found_ && cost + time * open_weight_ + open_bound_ >= best_ - tie_tolerance(best_)) return;
    for (std::size_t v = 0; v < p_.size(); ++v) {
      if (done_[v]) continue;
      if (!std::all_of(preds_[v].begin(), preds_[v].end(),
                       [&](std::size_t u) { return done_[u]; }))
        continue;
      const double finish = time + p_[v];
      done_[v] = true;
      current_.push_back(v);
      open_weight_ -= w_[v];
      open_bound_ -= w_[v] * p_[v];
      search(finish, cost + w_[v] * finish);
      open_bound_ += w_[v] * p_[v];
      open_weight_ += w_[v];
      current_.pop_back();
      done_[v] = false;
    }
  }

  std::vector<double> p_;
  std::vector<double> w_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<bool> done_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_order_;
  double best_ = 0.0;
  bool found_ = false;
  double open_weight_ = 0.0;
  double open_bound_ = 0.0;
};

class OriginalSearch {
 public:
  explicit OriginalSearch(const Instance& instance) : instance_(instance) {
    refs_ = identity_schedule(instance).order;
    used_.assign(refs_.size(), false);
    remaining_ops_.assign(instance.jobs.size(), 0);
    remaining_p_.assign(instance.jobs.size(), 0.0);
    for (const auto& ref : refs_) {
      ++remaining_ops_[ref.job];
      remaining_p_[ref.job] += operation_at(instance, ref).processing_time;
    }
    for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
      open_weight_ += instance.jobs[j].weight;
      open_bound_ += instance.jobs[j].weight * remaining_p_[j];
    }
  }

  OriginalOptimum run() {
    search(0.0, instance_.families.size(), 0.0);
    OriginalOptimum result;
    result.total = best_;
    for (auto i : best_order_) result.schedule.order.push_back(refs_[i]);
    return result;
  }

 private:
  void search(double time, std::size_t previous_family, double cost) {
    if (current_.size() == refs_.size()) {
      if (!found_ || cost < best_ - tie_tolerance(best_)) {
        found_ = true;
        best_ = cost;
        best_order_ = current_;
      }
      return;
    }
    if (found_ && cost + time * open_weight_ + open_bound_ >= best_ - tie_tolerance(best_)) return;
    for (std::size_t i = 0; i < refs_.size(); ++i) {
      if (used_[i]) continue;
      const auto ref = refs_[i];
      const auto& op = operation_at(instance_, ref);
      const double w = instance_.jobs[ref.job].weight;
      double finish = time + op.processing_time;
      if (op.family != previous_family) finish += instance_.families[op.family].setup_time;

      used_[i] = true;
      current_.push_back(i);
      open_bound_ -= w * op.processing_time;
      remaining_p_[ref.job] -= op.processing_time;
      const bool completes = --remaining_ops_[ref.job] == 0;
      if (completes) open_weight_ -= w;
      search(finish, op.family, completes ? cost + w * finish : cost);
      if (completes) open_weight_ += w;
      ++remaining_ops_[ref.job];
      remaining_p_[ref.job] += op.processing_time;
      open_bound_ += w * op.processing_time;
      current_.pop_back();
      used_[i] = false;
    }
  }

  const Instance& instance_;
  std::vector<OpRef> refs_;
  std::vector<bool> used_;
  std::vector<std::size_t> remaining_ops_;
  std::vector<double> remaining_p_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_order_;
  double best_ = 0.0;
  bool found_ = false;
  double open_weight_ = 0.0;
  double open_bound_ = 0.0;
};

}  // namespace

OriginalOptimum brute_force_original(const Instance& instance, const SearchGuard& guard) {
  validate(instance);
  check_guard(instance.operation_count(), guard);
  return OriginalSearch(instance).run();
}

OsOptimum brute_force_os(const GluedInstance& glued, const SearchGuard& guard) {
  const auto setups = glued.setups.size();
  const auto items = setups + glued.jobs.size();
  check_guard(items, guard);
  std::vector<double> p(items, 0.0);
  std::vector<double> w(items, 0.0);
  std::vector<std::vector<std::size_t>> preds(items);
  for (std::size_t s = 0; s < setups; ++s) p[s] = glued.setups[s].processing_time;
  for (std::size_t j = 0; j < glued.jobs.size(); ++j) {
    p[setups + j] = glued.jobs[j].total_processing;
    w[setups + j] = glued.jobs[j].weight;
    preds[setups + j] = glued.jobs[j].required_setups;
  }
  const auto best = TopologicalSearch(std::move(p), std::move(w), std::move(preds)).run();
  OsOptimum result;
  result.total = best.total;
  for (auto v : best.order)
    result.schedule.order.push_back(v < setups ? OsItem::setup(v) : OsItem::job(v - setups));
  return result;
}

PrecOptimum brute_force_prec(const PrecInstance& prec, const SearchGuard& guard) {
  validate(prec);
  check_guard(prec.nodes.size(), guard);
  std::vector<double> p;
  std::vector<double> w;
  for (const auto& node : prec.nodes) {
    p.push_back(node.processing);
    w.push_back(node.weight);
  }
  return TopologicalSearch(std::move(p), std::move(w), prec.predecessors()).run();
}

std::vector<ClosedSet> enumerate_closed_sets(const PrecInstance& prec, const SearchGuard& guard) {
  validate(prec);
  const auto n = prec.nodes.size();
  const auto preds = prec.predecessors();

  // Kahn order, smallest index first, so predecessors are decided earlier.
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& [from, to] : prec.edges) {
    succ[from].push_back(to);
    ++indegree[to];
  }
  std::vector<std::size_t> topo;
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    const auto v = *it;
    ready.erase(it);
    topo.push_back(v);
    for (auto u : succ[v])
      if (--indegree[u] == 0) ready.push_back(u);
  }

  std::vector<ClosedSet> sets;
  std::vector<bool> in(n, false);
  auto visit = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      if (sets.size() >= guard.max_closed_sets)
        throw GuardExceededError("more than " + std::to_string(guard.max_closed_sets) +
                                 " closed sets");
      ClosedSet set;
      for (std::size_t v = 0; v < n; ++v) {
        if (!in[v]) continue;
        set.nodes.push_back(v);
        set.weight += prec.nodes[v].weight;
        set.processing += prec.nodes[v].processing;
      }
      if (set.processing > 0.0)
        set.rho = set.weight / set.processing;
      else
        set.rho = set.weight > 0.0 ? std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::quiet_NaN();
      sets.push_back(std::move(set));
      return;
    }
    const auto v = topo[depth];
    self(self, depth + 1);
    if (std::all_of(preds[v].begin(), preds[v].end(), [&](std::size_t u) { return in[u]; })) {
      in[v] = true;
      self(self, depth + 1);
      in[v] = false;
    }
  };
  visit(visit, 0);
  return sets;
}

}  // namespace ossched

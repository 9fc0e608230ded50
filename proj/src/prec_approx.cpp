#include "ossched/prec_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

#include "max_flow.hpp"
#include "ossched/errors.hpp"

namespace ossched {
namespace {

constexpr double kInfiniteRatio = std::numeric_limits<double>::infinity();
constexpr int kMaxDinkelbachIterations = 100;

std::vector<std::size_t> members(const std::vector<bool>& mask) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) out.push_back(v);
  return out;
}

// Maximum-value closed subset of the active nodes. Inactive nodes are
// treated as already scheduled, so their precedences are ignored.
ClosureResult closure_on(const std::vector<std::vector<std::size_t>>& preds,
                         const std::vector<bool>& active, std::span<const double> value) {
  const auto n = preds.size();
  const std::size_t source = n;
  const std::size_t sink = n + 1;
  double magnitude = 0.0;
  for (std::size_t v = 0; v < n; ++v)
    if (active[v]) magnitude += std::abs(value[v]);
  detail::MaxFlow network(n + 2, 1e-11 * std::max(magnitude, 1e-300));
  for (std::size_t v = 0; v < n; ++v) {
    if (!active[v]) continue;
    if (value[v] > 0.0) network.add_edge(source, v, value[v]);
    if (value[v] < 0.0) network.add_edge(v, sink, -value[v]);
    for (auto u : preds[v])
      if (active[u]) network.add_edge(v, u, detail::MaxFlow::kInfinity);
  }
  network.run(source, sink);
  const auto reach = network.reaches_sink(sink);
  ClosureResult result;
  for (std::size_t v = 0; v < n; ++v) {
    if (active[v] && !reach[v]) {
      result.nodes.push_back(v);
      result.value += value[v];
    }
  }
  return result;
}

DensityResult density_on(const PrecInstance& prec,
                         const std::vector<std::vector<std::size_t>>& preds,
                         const std::vector<bool>& active) {
  const auto n = prec.nodes.size();
  if (std::none_of(active.begin(), active.end(), [](bool a) { return a; }))
    throw ParameterError("max-density initial set of an empty instance");

  // Closed sets of zero length: nodes whose active ancestry has p = 0.
  std::vector<int> zero_closed(n, -1);
  auto zero = [&](auto&& self, std::size_t v) -> bool {
    if (zero_closed[v] >= 0) return zero_closed[v] == 1;
    bool ok = prec.nodes[v].processing == 0.0;
    for (auto u : preds[v])
      if (ok && active[u]) ok = self(self, u);
    zero_closed[v] = ok ? 1 : 0;
    return ok;
  };
  std::vector<bool> zero_set(n, false);
  double zero_weight = 0.0;
  double total_p = 0.0;
  double total_w = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!active[v]) continue;
    total_p += prec.nodes[v].processing;
    total_w += prec.nodes[v].weight;
    if (zero(zero, v)) {
      zero_set[v] = true;
      zero_weight += prec.nodes[v].weight;
    }
  }
  DensityResult result;
  if (zero_weight > 0.0) {
    result.nodes = members(zero_set);
    result.rho = kInfiniteRatio;
    return result;
  }
  result.nodes = members(active);
  if (total_p == 0.0) {
    result.rho = 0.0;
    return result;
  }

  double lambda = total_w / total_p;
  result.lambdas.push_back(lambda);
  std::vector<double> value(n, 0.0);
  for (int iteration = 0; iteration < kMaxDinkelbachIterations; ++iteration) {
    for (std::size_t v = 0; v < n; ++v)
      value[v] = prec.nodes[v].weight - lambda * prec.nodes[v].processing;
    auto closure = closure_on(preds, active, value);
    if (closure.nodes.empty()) break;
    double p = 0.0;
    double w = 0.0;
    for (auto v : closure.nodes) {
      p += prec.nodes[v].processing;
      w += prec.nodes[v].weight;
    }
    if (closure.value <= 1e-12 * (total_w + lambda * total_p)) {
      // Optimal ratio reached; this closure is the inclusion-maximal optimizer.
      if (p > 0.0 && w / p >= lambda * (1.0 - 1e-12)) {
        result.nodes = std::move(closure.nodes);
        result.rho = std::max(lambda, w / p);
      } else {
        result.rho = lambda;
      }
      return result;
    }
    const double rho = w / p;
    if (!(rho > lambda)) break;
    lambda = rho;
    result.lambdas.push_back(lambda);
    result.nodes = std::move(closure.nodes);
  }
  result.rho = lambda;
  return result;
}

}  // namespace

std::vector<std::vector<std::size_t>> PrecInstance::predecessors() const {
  std::vector<std::vector<std::size_t>> preds(nodes.size());
  for (const auto& [from, to] : edges) preds.at(to).push_back(from);
  return preds;
}

void validate(const PrecInstance& prec) {
  std::unordered_set<std::string> ids;
  for (std::size_t v = 0; v < prec.nodes.size(); ++v) {
    const auto path = "nodes[" + std::to_string(v) + "]";
    const auto& node = prec.nodes[v];
    if (!ids.insert(node.id).second)
      throw InstanceError(path + ".id", "duplicate node id '" + node.id + "'");
    if (!(node.processing >= 0.0)) throw InstanceError(path + ".p", "must be nonnegative");
    if (!(node.weight >= 0.0)) throw InstanceError(path + ".w", "must be nonnegative");
  }
  std::vector<std::size_t> indegree(prec.nodes.size(), 0);
  std::vector<std::vector<std::size_t>> succ(prec.nodes.size());
  for (std::size_t e = 0; e < prec.edges.size(); ++e) {
    const auto [from, to] = prec.edges[e];
    if (from >= prec.nodes.size() || to >= prec.nodes.size())
      throw InstanceError("edges[" + std::to_string(e) + "]", "unknown node");
    succ[from].push_back(to);
    ++indegree[to];
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < prec.nodes.size(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++visited;
    for (auto u : succ[v])
      if (--indegree[u] == 0) ready.push_back(u);
  }
  if (visited != prec.nodes.size()) throw InstanceError("edges", "precedence graph has a cycle");
}

PrecInstance to_prec(const GluedInstance& glued) {
  PrecInstance prec;
  for (const auto& s : glued.setups) prec.nodes.push_back({"setup:" + s.family_id, s.processing_time, 0.0});
  const auto offset = glued.setups.size();
  for (std::size_t j = 0; j < glued.jobs.size(); ++j) {
    const auto& g = glued.jobs[j];
    prec.nodes.push_back({g.job_id, g.total_processing, g.weight});
    for (auto s : g.required_setups) prec.edges.emplace_back(s, offset + j);
  }
  return prec;
}

OsSchedule os_from_prec_order(const GluedInstance& glued, std::span<const std::size_t> order) {
  OsSchedule os;
  const auto offset = glued.setups.size();
  for (auto v : order)
    os.order.push_back(v < offset ? OsItem::setup(v) : OsItem::job(v - offset));
  return os;
}

double evaluate_prec(const PrecInstance& prec, std::span<const std::size_t> order) {
  const auto preds = prec.predecessors();
  std::vector<bool> done(prec.nodes.size(), false);
  if (order.size() != prec.nodes.size())
    throw MalformedScheduleError("order must contain every node exactly once");
  double time = 0.0;
  double total = 0.0;
  for (auto v : order) {
    if (v >= prec.nodes.size() || done[v])
      throw MalformedScheduleError("order must contain every node exactly once");
    for (auto u : preds[v])
      if (!done[u])
        throw InfeasibleScheduleError("node '" + prec.nodes[v].id + "' runs before '" +
                                      prec.nodes[u].id + "'");
    done[v] = true;
    time += prec.nodes[v].processing;
    total += prec.nodes[v].weight * time;
  }
  return total;
}

bool is_closed(const PrecInstance& prec, std::span<const std::size_t> nodes) {
  std::vector<bool> in(prec.nodes.size(), false);
  for (auto v : nodes) in.at(v) = true;
  for (const auto& [from, to] : prec.edges)
    if (in[to] && !in[from]) return false;
  return true;
}

ClosureResult max_weight_closure(const PrecInstance& prec, std::span<const double> value) {
  validate(prec);
  if (value.size() != prec.nodes.size())
    throw ParameterError("one value per node required");
  for (double v : value)
    if (!std::isfinite(v)) throw ParameterError("closure values must be finite");
  return closure_on(prec.predecessors(), std::vector<bool>(prec.nodes.size(), true), value);
}

DensityResult max_density_initial_set(const PrecInstance& prec) {
  validate(prec);
  return density_on(prec, prec.predecessors(), std::vector<bool>(prec.nodes.size(), true));
}

std::vector<SidneyBlock> sidney_decomposition(const PrecInstance& prec) {
  validate(prec);
  const auto n = prec.nodes.size();
  const auto preds = prec.predecessors();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& [from, to] : prec.edges) succ[from].push_back(to);

  auto key = [&](std::size_t v) {
    return WsptKey{prec.nodes[v].processing, prec.nodes[v].weight, v};
  };
  auto before = [&](std::size_t a, std::size_t b) { return wspt_less(key(a), key(b)); };

  std::vector<bool> active(n, true);
  std::vector<std::size_t> waiting(n, 0);  // unscheduled predecessors
  for (std::size_t v = 0; v < n; ++v) waiting[v] = preds[v].size();
  std::vector<SidneyBlock> blocks;
  std::size_t remaining = n;
  while (remaining > 0) {
    auto density = density_on(prec, preds, active);
    SidneyBlock block{{}, density.rho};
    std::vector<bool> in_block(n, false);
    for (auto v : density.nodes) in_block[v] = true;
    std::set<std::size_t, decltype(before)> available(before);
    for (auto v : density.nodes)
      if (waiting[v] == 0) available.insert(v);
    while (!available.empty()) {
      const auto v = *available.begin();
      available.erase(available.begin());
      block.nodes.push_back(v);
      for (auto u : succ[v])
        if (--waiting[u] == 0 && in_block[u]) available.insert(u);
    }
    for (auto v : density.nodes) active[v] = false;
    remaining -= density.nodes.size();
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::vector<std::size_t> sidney_schedule(const PrecInstance& prec) {
  std::vector<std::size_t> order;
  for (auto& block : sidney_decomposition(prec))
    order.insert(order.end(), block.nodes.begin(), block.nodes.end());
  return order;
}

AnyKResult solve_any_k(const Instance& instance, PullFactor beta) {
  const auto glued = glue(instance);
  const auto order = sidney_schedule(to_prec(glued));
  AnyKResult result;
  result.os = os_from_prec_order(glued, order);
  result.os_total = evaluate_os(glued, result.os).total;
  result.schedule = transform(instance, glued, result.os, beta);
  result.total = evaluate_original(instance, result.schedule).total;
  return result;
}

}  // namespace ossched

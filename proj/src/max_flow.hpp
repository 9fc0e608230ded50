#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace ossched::detail {

// Dinic's algorithm on real capacities. Residuals at or below `eps` count as
// saturated.
class MaxFlow {
 public:
  MaxFlow(std::size_t nodes, double eps) : adjacency_(nodes), eps_(eps) {}

  void add_edge(std::size_t from, std::size_t to, double capacity) {
    adjacency_[from].push_back(edges_.size());
    edges_.push_back({to, capacity});
    adjacency_[to].push_back(edges_.size());
    edges_.push_back({from, 0.0});
  }

  double run(std::size_t source, std::size_t sink) {
    double flow = 0.0;
    while (build_levels(source, sink)) {
      next_.assign(adjacency_.size(), 0);
      for (double pushed; (pushed = augment(source, sink, kInfinity)) > eps_;) flow += pushed;
    }
    return flow;
  }

  // Nodes that can still reach `sink` through unsaturated edges. Their
  // complement is the source side of the inclusion-maximal minimum cut.
  std::vector<bool> reaches_sink(std::size_t sink) const {
    std::vector<bool> reach(adjacency_.size(), false);
    std::queue<std::size_t> queue;
    reach[sink] = true;
    queue.push(sink);
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop();
      for (auto e : adjacency_[v]) {
        // e runs v -> u; the paired edge u -> v carries residual into v.
        const auto u = edges_[e].to;
        if (!reach[u] && edges_[e ^ 1].capacity > eps_) {
          reach[u] = true;
          queue.push(u);
        }
      }
    }
    return reach;
  }

  static constexpr double kInfinity = 1e18;

 private:
  struct Edge {
    std::size_t to;
    double capacity;  // residual
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    level_.assign(adjacency_.size(), -1);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop();
      for (auto e : adjacency_[v]) {
        const auto& edge = edges_[e];
        if (level_[edge.to] < 0 && edge.capacity > eps_) {
          level_[edge.to] = level_[v] + 1;
          queue.push(edge.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  double augment(std::size_t v, std::size_t sink, double limit) {
    if (v == sink) return limit;
    for (auto& i = next_[v]; i < adjacency_[v].size(); ++i) {
      const auto e = adjacency_[v][i];
      auto& edge = edges_[e];
      if (edge.capacity > eps_ && level_[edge.to] == level_[v] + 1) {
        const double pushed = augment(edge.to, sink, std::min(limit, edge.capacity));
        if (pushed > eps_) {
          edge.capacity -= pushed;
          edges_[e ^ 1].capacity += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
  double eps_;
};

}  // namespace ossched::detail

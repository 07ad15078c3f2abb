#pragma once

// Dinic maximum flow with integral capacities. Arcs are explored in
// insertion order, so the resulting flow is a deterministic function of the
// order in which the caller adds edges.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace knotbound {

class MaxFlow {
 public:
  using Cap = long long;
  static constexpr Cap kInfinite = std::numeric_limits<Cap>::max() / 4;

  explicit MaxFlow(int nodes) : adj_(nodes), level_(nodes), it_(nodes) {}

  /// Returns an arc id usable with flow_on().
  int add_edge(int from, int to, Cap cap) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, cap, 0});
    adj_[from].push_back(id);
    arcs_.push_back({from, 0, 0});
    adj_[to].push_back(id + 1);
    return id;
  }

  Cap flow_on(int arc) const { return arcs_[arc].flow; }

  Cap run(int s, int t, Cap limit = kInfinite) {
    Cap total = 0;
    while (total < limit && bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (total < limit) {
        const Cap pushed = dfs(s, t, limit - total);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    Cap cap;
    Cap flow;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int id : adj_[v]) {
        const Arc& a = arcs_[id];
        if (a.cap - a.flow > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Cap dfs(int v, int t, Cap f) {
    if (v == t) return f;
    for (auto& i = it_[v]; i < adj_[v].size(); ++i) {
      const int id = adj_[v][i];
      Arc& a = arcs_[id];
      if (a.cap - a.flow <= 0 || level_[a.to] != level_[v] + 1) continue;
      const Cap d = dfs(a.to, t, std::min(f, a.cap - a.flow));
      if (d > 0) {
        a.flow += d;
        arcs_[id ^ 1].flow -= d;
        return d;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace knotbound

#include "nzflow/maxflow.hpp"

#include <algorithm>
#include <queue>

namespace nzflow {

UnitFlowNetwork::UnitFlowNetwork(const Multigraph& g, std::span<const EdgeId> skip)
    : adj_(static_cast<std::size_t>(g.num_vertices())) {
  std::vector<EdgeId> sorted_skip(skip.begin(), skip.end());
  std::sort(sorted_skip.begin(), sorted_skip.end());
  for (const Edge& e : g.edges()) {
    if (e.is_loop() || std::binary_search(sorted_skip.begin(), sorted_skip.end(), e.id)) continue;
    // One arc pair, each the residual of the other: an undirected unit link.
    const int a = e.tail;
    const int b = e.head;
    adj_[a].push_back({b, 1, static_cast<int>(adj_[b].size()), e.id, true});
    adj_[b].push_back({a, 1, static_cast<int>(adj_[a].size()) - 1, e.id, false});
  }
}

int UnitFlowNetwork::add_node() {
  adj_.emplace_back();
  return static_cast<int>(adj_.size()) - 1;
}

void UnitFlowNetwork::add_arc(int from, int to, int capacity) {
  adj_[from].push_back({to, capacity, static_cast<int>(adj_[to].size()), -1, true});
  adj_[to].push_back({from, 0, static_cast<int>(adj_[from].size()) - 1, -1, false});
}

int UnitFlowNetwork::augment(int s, int t) {
  const std::size_t n = adj_.size();
  std::vector<std::pair<int, int>> parent(n, {-1, -1});
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(s);
  seen[s] = true;
  while (!q.empty() && !seen[t]) {
    const int u = q.front();
    q.pop();
    for (int i = 0; i < static_cast<int>(adj_[u].size()); ++i) {
      const Arc& a = adj_[u][i];
      if (a.cap > 0 && !seen[a.to]) {
        seen[a.to] = true;
        parent[a.to] = {u, i};
        q.push(a.to);
      }
    }
  }
  if (!seen[t]) return 0;
  int bottleneck = kInfinite;
  for (int x = t; x != s; x = parent[x].first) {
    bottleneck = std::min(bottleneck, adj_[parent[x].first][parent[x].second].cap);
  }
  for (int x = t; x != s; x = parent[x].first) {
    Arc& a = adj_[parent[x].first][parent[x].second];
    a.cap -= bottleneck;
    adj_[a.to][a.rev].cap += bottleneck;
  }
  return bottleneck;
}

int UnitFlowNetwork::max_flow(int s, int t, int bound) {
  if (s == t) return 0;
  int flow = 0;
  while (flow < bound) {
    const int pushed = augment(s, t);
    if (pushed == 0) break;
    flow += pushed;
  }
  return flow;
}

std::vector<bool> UnitFlowNetwork::residual_reachable(int s) const {
  std::vector<bool> seen(adj_.size(), false);
  std::vector<int> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const Arc& a : adj_[u]) {
      if (a.cap > 0 && !seen[a.to]) {
        seen[a.to] = true;
        stack.push_back(a.to);
      }
    }
  }
  return seen;
}

std::vector<std::pair<EdgeId, bool>> UnitFlowNetwork::used_edges() const {
  std::vector<std::pair<EdgeId, bool>> out;
  for (const auto& arcs : adj_) {
    for (const Arc& a : arcs) {
      // A forward arc with zero residual carries one unit tail->head; a
      // backward arc with residual 2 would mean head->tail. Inspect each pair
      // once via its forward arc.
      if (a.edge < 0 || !a.forward) continue;
      const Arc& back = adj_[a.to][a.rev];
      if (a.cap == 0) out.emplace_back(a.edge, true);
      else if (back.cap == 0) out.emplace_back(a.edge, false);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nzflow

#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace postman {

// Successive-shortest-paths min-cost max-flow with potentials. Costs must be
// non-negative. Small and dense-friendly; instances here have a few dozen
// nodes at most.
class MinCostFlow {
 public:
  explicit MinCostFlow(int n) : n_(n), head_(n, -1) {}

  int add_edge(int from, int to, long long cap, long long cost) {
    int id = static_cast<int>(to_.size());
    to_.push_back(to);
    next_.push_back(head_[from]);
    head_[from] = id;
    cap_.push_back(cap);
    cost_.push_back(cost);
    to_.push_back(from);
    next_.push_back(head_[to]);
    head_[to] = id + 1;
    cap_.push_back(0);
    cost_.push_back(-cost);
    return id;
  }

  long long flow_on(int id) const { return cap_[id ^ 1]; }

  // Returns (flow, cost); sends as much flow as possible.
  std::pair<long long, long long> solve(int s, int t) {
    const long long kInf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> pot(n_, 0), dist(n_);
    std::vector<int> prev_edge(n_);
    long long flow = 0, total_cost = 0;
    for (;;) {
      std::fill(dist.begin(), dist.end(), kInf);
      dist[s] = 0;
      using Item = std::pair<long long, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      pq.push({0, s});
      while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (int e = head_[v]; e != -1; e = next_[e]) {
          if (cap_[e] <= 0) continue;
          long long nd = d + cost_[e] + pot[v] - pot[to_[e]];
          if (nd < dist[to_[e]]) {
            dist[to_[e]] = nd;
            prev_edge[to_[e]] = e;
            pq.push({nd, to_[e]});
          }
        }
      }
      if (dist[t] >= kInf) break;
      for (int v = 0; v < n_; ++v)
        if (dist[v] < kInf) pot[v] += dist[v];
      long long push = kInf;
      for (int v = t; v != s;) {
        int e = prev_edge[v];
        push = std::min(push, cap_[e]);
        v = to_[e ^ 1];
      }
      for (int v = t; v != s;) {
        int e = prev_edge[v];
        cap_[e] -= push;
        cap_[e ^ 1] += push;
        total_cost += push * cost_[e];
        v = to_[e ^ 1];
      }
      flow += push;
    }
    return {flow, total_cost};
  }

 private:
  int n_;
  std::vector<int> head_, next_, to_;
  std::vector<long long> cap_, cost_;
};

}  // namespace postman

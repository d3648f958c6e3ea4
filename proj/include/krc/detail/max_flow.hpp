#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace krc::detail {

template <class Cap>
struct CapTraits;

template <>
struct CapTraits<std::int64_t> {
  static constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
};

template <>
struct CapTraits<__int128> {
  static constexpr __int128 inf = static_cast<__int128>(1) << 125;
};

/// Dinic max-flow over a directed arc list. An arc with capacity `inf` is
/// never saturated; a flow that reaches `inf` is reported as `inf`.
template <class Cap>
class MaxFlow {
 public:
  static constexpr Cap kInfCap = CapTraits<Cap>::inf;

  explicit MaxFlow(int node_count)
      : head_(static_cast<std::size_t>(node_count), -1) {}

  int node_count() const { return static_cast<int>(head_.size()); }

  /// Adds u->v with capacity `cap` and its reverse with `rev_cap`. An
  /// undirected edge is one call with cap == rev_cap.
  int add_arc(int u, int v, Cap cap, Cap rev_cap = 0) {
    int id = static_cast<int>(to_.size());
    push(u, v, cap);
    push(v, u, rev_cap);
    return id;
  }

  /// Computes the max flow, stopping early once `limit` is reached.
  Cap solve(int s, int t, Cap limit = kInfCap) {
    Cap total = 0;
    if (s == t) return kInfCap;
    while (total < limit && bfs(s, t)) {
      iter_ = head_;
      while (total < limit) {
        Cap f = dfs(s, t, limit - total);
        if (f == 0) break;
        if (f >= kInfCap) return kInfCap;
        total += f;
        if (total >= kInfCap) return kInfCap;
      }
    }
    return total;
  }

  /// Nodes reachable from s in the residual network after solve().
  std::vector<bool> source_side(int s) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<int> stack{s};
    seen[static_cast<std::size_t>(s)] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int a = head_[static_cast<std::size_t>(u)]; a != -1; a = next_[static_cast<std::size_t>(a)]) {
        int v = to_[static_cast<std::size_t>(a)];
        if (cap_[static_cast<std::size_t>(a)] > 0 && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  }

 private:
  void push(int u, int v, Cap cap) {
    to_.push_back(v);
    cap_.push_back(cap);
    next_.push_back(head_[static_cast<std::size_t>(u)]);
    head_[static_cast<std::size_t>(u)] = static_cast<int>(to_.size()) - 1;
  }

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int a = head_[static_cast<std::size_t>(u)]; a != -1; a = next_[static_cast<std::size_t>(a)]) {
        int v = to_[static_cast<std::size_t>(a)];
        if (cap_[static_cast<std::size_t>(a)] > 0 && level_[static_cast<std::size_t>(v)] < 0) {
          level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(v);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  Cap dfs(int u, int t, Cap pushed) {
    if (u == t) return pushed;
    for (int& a = iter_[static_cast<std::size_t>(u)]; a != -1; a = next_[static_cast<std::size_t>(a)]) {
      auto ai = static_cast<std::size_t>(a);
      int v = to_[ai];
      if (cap_[ai] <= 0 || level_[static_cast<std::size_t>(v)] != level_[static_cast<std::size_t>(u)] + 1) continue;
      Cap f = dfs(v, t, std::min(pushed, cap_[ai]));
      if (f > 0) {
        auto ri = static_cast<std::size_t>(a ^ 1);
        if (cap_[ai] < kInfCap) cap_[ai] -= f;
        if (cap_[ri] < kInfCap) cap_[ri] = (cap_[ri] > kInfCap - f) ? kInfCap : cap_[ri] + f;
        return f;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> next_;
  std::vector<int> to_;
  std::vector<Cap> cap_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace krc::detail

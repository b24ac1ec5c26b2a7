// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "spgame/error.hpp"
#include "spgame/rational.hpp"

namespace spgame {

using Vertex = int;
using ArcId = int;
inline constexpr ArcId kNoArc = -1;

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Directed multigraph with loops. Arc ids are dense (0..m-1) and stable;
// out- and in-lists are kept in increasing arc-id order.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int num_vertices) : out_(num_vertices), in_(num_vertices) {}

  int add_vertex() {
    out_.emplace_back();
    in_.emplace_back();
    return num_vertices() - 1;
  }

  ArcId add_arc(Vertex tail, Vertex head) {
    if (!valid(tail) || !valid(head)) {
      throw Error(ErrorCode::kInvalidInput, "arc endpoint out of range");
    }
    ArcId id = num_arcs();
    arcs_.push_back({tail, head});
    out_[tail].push_back(id);
    in_[head].push_back(id);
    return id;
  }

  int num_vertices() const { return static_cast<int>(out_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  bool valid(Vertex v) const { return v >= 0 && v < num_vertices(); }

  const Arc& arc(ArcId e) const { return arcs_[e]; }
  Vertex tail(ArcId e) const { return arcs_[e].tail; }
  Vertex head(ArcId e) const { return arcs_[e].head; }
  std::span<const ArcId> out_arcs(Vertex v) const { return out_[v]; }
  std::span<const ArcId> in_arcs(Vertex v) const { return in_[v]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_[v].size()); }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.arcs_ == b.arcs_ && a.out_.size() == b.out_.size(); }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
};

using ArcFilter = std::function<bool(ArcId)>;

// Vertices reachable from `source` along arcs accepted by `keep`.
inline std::vector<bool> reachable_from(const Digraph& g, Vertex source,
                                        const ArcFilter& keep = nullptr) {
  std::vector<bool> seen(g.num_vertices(), false);
  std::vector<Vertex> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (ArcId e : g.out_arcs(u)) {
      if (keep && !keep(e)) continue;
      Vertex v = g.head(e);
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

// Vertices that reach `target` along arcs accepted by `keep`.
inline std::vector<bool> reaching(const Digraph& g, Vertex target,
                                  const ArcFilter& keep = nullptr) {
  std::vector<bool> seen(g.num_vertices(), false);
  std::vector<Vertex> stack{target};
  seen[target] = true;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (ArcId e : g.in_arcs(v)) {
      if (keep && !keep(e)) continue;
      Vertex u = g.tail(e);
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

struct ShortestPathTree {
  std::vector<Cost> dist;
  std::vector<ArcId> parent;  // arc used to reach the vertex, kNoArc for roots/unreached
};

// Single-source Dijkstra over nonnegative exact lengths. Ties are broken by
// (distance, vertex) in the heap and by lowest arc id among equal relaxations,
// so the tree is reproducible.
inline ShortestPathTree dijkstra_from(const Digraph& g, Vertex source, std::span<const Rational> r,
                                      const ArcFilter& keep = nullptr) {
  ShortestPathTree tree{std::vector<Cost>(g.num_vertices(), Cost::infinity()),
                        std::vector<ArcId>(g.num_vertices(), kNoArc)};
  using Entry = std::pair<Rational, Vertex>;
  auto greater = [](const Entry& a, const Entry& b) {
    auto c = a.first <=> b.first;
    if (c != 0) return c > 0;
    return a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> heap(greater);
  std::vector<bool> done(g.num_vertices(), false);
  tree.dist[source] = Rational(0);
  heap.push({Rational(0), source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = true;
    for (ArcId e : g.out_arcs(u)) {
      if (keep && !keep(e)) continue;
      if (r[e].sign() < 0) throw Error(ErrorCode::kNegativeCost, "negative arc length in Dijkstra");
      Vertex v = g.head(e);
      if (done[v]) continue;
      Cost nd = Cost(d + r[e]);
      if (nd < tree.dist[v]) {
        tree.dist[v] = nd;
        tree.parent[v] = e;
        heap.push({d + r[e], v});
      }
    }
  }
  return tree;
}

// Arc sequence from the tree root to `target`, or nullopt when unreachable.
inline std::optional<std::vector<ArcId>> tree_path(const Digraph& g, const ShortestPathTree& tree,
                                                   Vertex source, Vertex target) {
  if (tree.dist[target].is_infinite()) return std::nullopt;
  std::vector<ArcId> path;
  for (Vertex v = target; v != source;) {
    ArcId e = tree.parent[v];
    if (e == kNoArc) return std::nullopt;
    path.push_back(e);
    v = g.tail(e);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::optional<std::vector<ArcId>> shortest_path(const Digraph& g, Vertex source,
                                                       Vertex target, std::span<const Rational> r,
                                                       const ArcFilter& keep = nullptr) {
  return tree_path(g, dijkstra_from(g, source, r, keep), source, target);
}

// Shortest distance from every vertex to `target` (reverse Dijkstra).
inline std::vector<Cost> distances_to(const Digraph& g, Vertex target, std::span<const Rational> r,
                                      const ArcFilter& keep = nullptr) {
  std::vector<Cost> dist(g.num_vertices(), Cost::infinity());
  using Entry = std::pair<Rational, Vertex>;
  auto greater = [](const Entry& a, const Entry& b) {
    auto c = a.first <=> b.first;
    if (c != 0) return c > 0;
    return a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> heap(greater);
  std::vector<bool> done(g.num_vertices(), false);
  dist[target] = Rational(0);
  heap.push({Rational(0), target});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = true;
    for (ArcId e : g.in_arcs(v)) {
      if (keep && !keep(e)) continue;
      Vertex u = g.tail(e);
      if (done[u]) continue;
      Cost nd = Cost(d + r[e]);
      if (nd < dist[u]) {
        dist[u] = nd;
        heap.push({d + r[e], u});
      }
    }
  }
  return dist;
}

// True when some directed cycle has total length <= 0. Bellman-Ford from a
// virtual source finds negative cycles; otherwise the resulting potentials
// make every reduced length nonnegative without changing cycle lengths, and a
// zero cycle is a cycle among the reduced-zero arcs.
inline bool has_nonpositive_cycle(const Digraph& g, std::span<const Rational> r) {
  const int n = g.num_vertices();
  std::vector<Rational> pot(n, Rational(0));
  bool changed = true;
  for (int round = 0; round <= n && changed; ++round) {
    changed = false;
    for (ArcId e = 0; e < g.num_arcs(); ++e) {
      Rational cand = pot[g.tail(e)] + r[e];
      if (cand < pot[g.head(e)]) {
        pot[g.head(e)] = cand;
        changed = true;
      }
    }
    if (changed && round == n) return true;
  }
  // Cycle detection in the tight subgraph by iterative DFS colouring.
  auto tight = [&](ArcId e) { return pot[g.tail(e)] + r[e] == pot[g.head(e)]; };
  std::vector<int> colour(n, 0);
  for (Vertex root = 0; root < n; ++root) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      auto outs = g.out_arcs(u);
      if (next == outs.size()) {
        colour[u] = 2;
        stack.pop_back();
        continue;
      }
      ArcId e = outs[next++];
      if (!tight(e)) continue;
      Vertex v = g.head(e);
      if (colour[v] == 1) return true;
      if (colour[v] == 0) {
        colour[v] = 1;
        stack.push_back({v, 0});
      }
    }
  }
  return false;
}

}  // namespace spgame

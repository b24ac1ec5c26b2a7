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

// Modified Dijkstra: for every vertex u, the largest shortest distance from u
// to t over all admissible subgraphs (one independent set removed at every
// vertex), together with the blocked sets and tight arcs that certify it.
//
// The search grows from t over arcs keyed by r(e) + phi(head). When the
// cheapest arc (u,v) leaving an unsettled u is extracted, the blocker first
// tries to add it to the blocked set of u; only when that would make the set
// dependent is u settled at that key. Vertices never settled have phi = +inf.

#pragma once

#include <queue>
#include <span>
#include <string>
#include <vector>

#include "spgame/digraph.hpp"
#include "spgame/error.hpp"
#include "spgame/game.hpp"
#include "spgame/independence.hpp"
#include "spgame/rational.hpp"

namespace spgame {

struct Potentials {
  std::vector<Cost> phi;
  std::vector<std::vector<ArcId>> blocked;  // in extraction order
  std::vector<ArcId> witness;               // tight unblocked arc, kNoArc for t and for B
  std::vector<Vertex> infinite;             // B = {phi = +inf}, ascending
  std::vector<Vertex> settle_order;         // t first, then settled vertices in order

  bool in_infinite_set(Vertex v) const { return phi[v].is_infinite(); }
};

inline Potentials modified_dijkstra(const Digraph& g, Vertex t, std::span<const Rational> r,
                                    const IndependenceOracle& oracle) {
  const int n = g.num_vertices();
  if (!g.valid(t)) throw Error(ErrorCode::kInvalidInput, "target out of range");
  if (g.out_degree(t) != 0) throw Error(ErrorCode::kInvalidInput, "target must have no out-arcs");
  if (static_cast<int>(r.size()) != g.num_arcs()) {
    throw Error(ErrorCode::kInvalidInput, "cost vector size mismatch");
  }
  for (ArcId e = 0; e < g.num_arcs(); ++e) {
    if (r[e].sign() < 0) throw Error(ErrorCode::kNegativeCost, "negative length on arc " + std::to_string(e));
  }

  Potentials out;
  out.phi.assign(n, Cost::infinity());
  out.blocked.assign(n, {});
  out.witness.assign(n, kNoArc);
  std::vector<bool> settled(n, false);

  struct Entry {
    Rational key;
    ArcId arc;
  };
  auto later = [](const Entry& a, const Entry& b) {
    auto c = a.key <=> b.key;
    if (c != 0) return c > 0;
    return a.arc > b.arc;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);

  settled[t] = true;
  out.phi[t] = Rational(0);
  out.settle_order.push_back(t);
  for (ArcId e : g.in_arcs(t)) {
    if (!settled[g.tail(e)]) heap.push({r[e], e});
  }

  while (!heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    const Vertex u = g.tail(top.arc);
    if (settled[u]) continue;
    auto& blocked = out.blocked[u];
    blocked.push_back(top.arc);
    if (oracle.is_independent(u, blocked)) {
      if (static_cast<int>(blocked.size()) == g.out_degree(u)) {
        throw Error(ErrorCode::kOracleViolation,
                    "oracle reports all of E(" + std::to_string(u) + ") independent");
      }
      continue;
    }
    blocked.pop_back();
    settled[u] = true;
    out.phi[u] = top.key;
    out.witness[u] = top.arc;
    out.settle_order.push_back(u);
    for (ArcId e : g.in_arcs(u)) {
      if (!settled[g.tail(e)]) heap.push({r[e] + top.key, e});
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!settled[v]) out.infinite.push_back(v);
  }
  return out;
}

// Checks the certificate conditions on a potentials object: for every u != t
//   (a) phi(u) >= r(e) + phi(v) on blocked arcs,
//   (b) phi(u) <= r(e) + phi(v) on unblocked arcs,
//   (c) equality on some unblocked arc (the witness when phi(u) is finite),
//   (d) the set of arcs with phi(u) >= r(e) + phi(v) is dependent,
// plus phi(t) = 0 and independence of each blocked set. Returns the list of
// violations; empty means the certificate holds.
inline std::vector<std::string> potential_violations(const Digraph& g, Vertex t,
                                                     std::span<const Rational> r,
                                                     const IndependenceOracle& oracle,
                                                     const Potentials& pot) {
  std::vector<std::string> bad;
  auto where = [](Vertex u) { return " at vertex " + std::to_string(u); };
  if (pot.phi[t] != Cost(0)) bad.push_back("phi(t) != 0");
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (u == t) continue;
    const auto& blocked = pot.blocked[u];
    auto is_blocked = [&](ArcId e) {
      return std::find(blocked.begin(), blocked.end(), e) != blocked.end();
    };
    if (!oracle.is_independent(u, blocked)) bad.push_back("blocked set dependent" + where(u));
    bool tight_unblocked = false;
    std::vector<ArcId> dominated;
    for (ArcId e : g.out_arcs(u)) {
      Cost via = Cost(r[e]) + pot.phi[g.head(e)];
      if (pot.phi[u] >= via) dominated.push_back(e);
      if (is_blocked(e)) {
        if (!(pot.phi[u] >= via)) bad.push_back("(a) fails on arc " + std::to_string(e) + where(u));
      } else {
        if (!(pot.phi[u] <= via)) bad.push_back("(b) fails on arc " + std::to_string(e) + where(u));
        if (pot.phi[u] == via) tight_unblocked = true;
      }
    }
    if (!tight_unblocked) bad.push_back("(c) no tight unblocked arc" + where(u));
    if (pot.phi[u].is_finite()) {
      ArcId w = pot.witness[u];
      if (w == kNoArc || g.tail(w) != u || is_blocked(w) ||
          pot.phi[u] != Cost(r[w]) + pot.phi[g.head(w)]) {
        bad.push_back("(c) witness arc not tight" + where(u));
      }
    }
    if (oracle.is_independent(u, dominated)) bad.push_back("(d) dominated set independent" + where(u));
  }
  return bad;
}

// Shortest-longest values for one player of an SP game: the minimizer picks
// its own moves, the opponent blocks all but one move at its positions.
// `r` defaults to the minimizer's own costs.
inline Potentials sp_shortest_longest(const SPGame& game, Player minimizer,
                                      std::span<const Rational> r) {
  auto oracle = sp_oracle(game, opponent(minimizer));
  return modified_dijkstra(game.graph, game.terminal(), r, *oracle);
}

inline Potentials sp_shortest_longest(const SPGame& game, Player minimizer) {
  return sp_shortest_longest(game, minimizer, game.costs(minimizer));
}

}  // namespace spgame

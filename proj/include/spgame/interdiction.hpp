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

// Shortest-path interdiction games. At every vertex u != t player 1 blocks
// an independent set sigma1(u) and player 2 offers a dependent set sigma2(u);
// the play runs in the union of sigma2(u) \ sigma1(u). A player pays the
// length of a path that is shortest for both players' costs, or +inf when no
// such common path exists.

#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spgame/digraph.hpp"
#include "spgame/error.hpp"
#include "spgame/game.hpp"
#include "spgame/independence.hpp"
#include "spgame/ne_solver.hpp"
#include "spgame/rational.hpp"
#include "spgame/shortest_longest.hpp"

namespace spgame {

struct InterdictionGame {
  Digraph graph;
  Vertex start = 0;
  Vertex terminal = 0;
  OraclePtr oracle;
  std::vector<Rational> r1;
  std::vector<Rational> r2;
  std::vector<std::string> vertex_names;
  std::vector<std::string> arc_names;

  int num_vertices() const { return graph.num_vertices(); }
  int num_arcs() const { return graph.num_arcs(); }
  const std::vector<Rational>& costs(Player p) const { return p == Player::kOne ? r1 : r2; }
};

// Throws kInvalidInput unless t is the unique sink, costs are positive, and
// at every u != t the empty set is independent while E(u) is dependent.
inline void validate_interdiction(const InterdictionGame& game) {
  const Digraph& g = game.graph;
  if (!g.valid(game.start) || !g.valid(game.terminal)) {
    throw Error(ErrorCode::kInvalidInput, "start or terminal out of range");
  }
  if (!game.oracle || game.oracle->num_vertices() != g.num_vertices()) {
    throw Error(ErrorCode::kInvalidInput, "oracle does not match the graph");
  }
  for (ArcId e = 0; e < g.num_arcs(); ++e) {
    if (game.r1[e].sign() <= 0 || game.r2[e].sign() <= 0) {
      throw Error(ErrorCode::kInvalidInput, "costs must be positive (arc " + game.arc_names[e] + ")");
    }
  }
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (u == game.terminal) {
      if (g.out_degree(u) != 0) throw Error(ErrorCode::kInvalidInput, "terminal has out-arcs");
      continue;
    }
    if (g.out_degree(u) == 0) {
      throw Error(ErrorCode::kInvalidInput, "vertex " + game.vertex_names[u] + " is a second sink");
    }
    if (!game.oracle->is_independent(u, {})) {
      throw Error(ErrorCode::kInvalidInput, "empty set dependent at " + game.vertex_names[u]);
    }
    if (game.oracle->is_independent(u, g.out_arcs(u))) {
      throw Error(ErrorCode::kInvalidInput, "E(u) independent at " + game.vertex_names[u]);
    }
  }
}

struct InterdictionSituation {
  std::vector<std::vector<ArcId>> sigma1;  // independent sets
  std::vector<std::vector<ArcId>> sigma2;  // dependent sets

  friend bool operator==(const InterdictionSituation&, const InterdictionSituation&) = default;
};

inline bool is_valid_interdiction_situation(const InterdictionGame& game,
                                            const InterdictionSituation& sit) {
  const int n = game.num_vertices();
  if (static_cast<int>(sit.sigma1.size()) != n || static_cast<int>(sit.sigma2.size()) != n) return false;
  for (Vertex u = 0; u < n; ++u) {
    if (u == game.terminal) {
      if (!sit.sigma1[u].empty() || !sit.sigma2[u].empty()) return false;
      continue;
    }
    try {
      if (!is_independent(*game.oracle, u, sit.sigma1[u])) return false;
      if (!is_dependent(*game.oracle, u, sit.sigma2[u])) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

// Arcs of G(sigma1, sigma2).
inline std::vector<bool> active_arcs(const InterdictionGame& game, const InterdictionSituation& sit) {
  std::vector<bool> active(game.num_arcs(), false);
  for (Vertex u = 0; u < game.num_vertices(); ++u) {
    if (u == game.terminal) continue;
    for (ArcId e : sit.sigma2[u]) {
      const auto& blocked = sit.sigma1[u];
      if (std::find(blocked.begin(), blocked.end(), e) == blocked.end()) active[e] = true;
    }
  }
  return active;
}

struct InterdictionOutcome {
  Cost cost1;
  Cost cost2;
  std::optional<std::vector<ArcId>> common_path;
};

// An arc lies on some shortest s-t path iff d(s,u) + r(e) + d(v,t) = d(s,t).
// With positive lengths every s-t path made of such arcs is itself shortest,
// so a path shortest for both metrics exists iff t is reachable from s over
// arcs tight for both.
inline InterdictionOutcome interdiction_cost(const InterdictionGame& game,
                                             const InterdictionSituation& sit) {
  const Digraph& g = game.graph;
  const Vertex s = game.start;
  const Vertex t = game.terminal;
  InterdictionOutcome out{Cost::infinity(), Cost::infinity(), std::nullopt};
  if (s == t) {
    out.cost1 = Cost(0);
    out.cost2 = Cost(0);
    out.common_path = std::vector<ArcId>{};
    return out;
  }
  std::vector<bool> active = active_arcs(game, sit);
  auto keep = [&](ArcId e) { return static_cast<bool>(active[e]); };
  std::vector<std::vector<bool>> tight;
  for (Player p : {Player::kOne, Player::kTwo}) {
    const auto& r = game.costs(p);
    auto from = dijkstra_from(g, s, r, keep);
    if (from.dist[t].is_infinite()) return out;
    auto to = distances_to(g, t, r, keep);
    std::vector<bool> on(g.num_arcs(), false);
    for (ArcId e = 0; e < g.num_arcs(); ++e) {
      if (!active[e]) continue;
      on[e] = from.dist[g.tail(e)] + Cost(r[e]) + to[g.head(e)] == from.dist[t];
    }
    tight.push_back(std::move(on));
  }
  auto both = [&](ArcId e) { return tight[0][e] && tight[1][e]; };
  auto path = shortest_path(g, s, t, game.r1, both);
  if (!path) return out;
  out.cost1 = effective_cost(*path, game.r1);
  out.cost2 = effective_cost(*path, game.r2);
  out.common_path = std::move(path);
  return out;
}

enum class InterdictionRoute {
  kBlockerCannotForce,  // player 1 cannot force +inf
  kChooserCannotForce,  // player 2 cannot force +inf; solved in the dual system
  kBothForce,
};

inline const char* route_name(InterdictionRoute r) {
  switch (r) {
    case InterdictionRoute::kBlockerCannotForce: return "blocker-cannot-force";
    case InterdictionRoute::kChooserCannotForce: return "chooser-cannot-force";
    case InterdictionRoute::kBothForce: return "both-force";
  }
  return "unknown";
}

// One run of the construction from the blocker's side: potentials of the
// chooser's metric under the blocking system, then, when the start value is
// finite, the equilibrium sets of both sides.
struct BlockerRun {
  Potentials potentials;
  bool start_finite = false;
  std::vector<bool> in_u;
  TransformedCosts rbar;
  std::vector<bool> nonpositive;  // E'': arcs inside U with r̄ <= 0
  std::vector<ArcId> path;
  std::vector<std::vector<ArcId>> blocker_sets;
  std::vector<std::vector<ArcId>> chooser_sets;
};

// Smallest prefix (by arc id) of E(u) that is dependent.
inline std::vector<ArcId> greedy_dependent_set(const IndependenceOracle& oracle, Vertex u) {
  std::vector<ArcId> set;
  for (ArcId e : oracle.ground_set(u)) {
    set.push_back(e);
    if (!oracle.is_independent(u, set)) return set;
  }
  throw Error(ErrorCode::kOracleViolation, "E(u) independent at vertex " + std::to_string(u));
}

inline BlockerRun run_blocker_side(const Digraph& g, Vertex s, Vertex t,
                                   const IndependenceOracle& oracle,
                                   std::span<const Rational> r_chooser,
                                   std::span<const Rational> r_blocker) {
  BlockerRun run;
  run.potentials = modified_dijkstra(g, t, r_chooser, oracle);
  const Potentials& pot = run.potentials;
  run.start_finite = pot.phi[s].is_finite();
  if (!run.start_finite) return run;

  const int n = g.num_vertices();
  run.in_u.assign(n, false);
  for (Vertex v = 0; v < n; ++v) run.in_u[v] = pot.phi[v].is_finite();
  const auto& in_u = run.in_u;
  const std::vector<bool> scope = arcs_within(g, in_u);
  run.rbar = potential_transform(g, r_chooser, pot, scope);
  const auto& rbar = run.rbar;
  run.nonpositive.assign(g.num_arcs(), false);
  for (ArcId e = 0; e < g.num_arcs(); ++e) run.nonpositive[e] = scope[e] && rbar.at(e).sign() <= 0;

  auto where = [](Vertex u) { return " at vertex " + std::to_string(u); };
  auto contains = [](const std::vector<ArcId>& set, ArcId e) {
    return std::find(set.begin(), set.end(), e) != set.end();
  };
  for (Vertex u = 0; u < n; ++u) {
    if (u == t) continue;
    std::vector<ArcId> into_u;
    for (ArcId e : g.out_arcs(u)) {
      if (in_u[g.head(e)]) into_u.push_back(e);
    }
    // The blocker can keep the chooser inside B but cannot push it there.
    if (in_u[u]) {
      ensure(!oracle.is_independent(u, into_u), "arcs into U independent" + where(u));
    } else {
      ensure(oracle.is_independent(u, into_u), "arcs into U dependent" + where(u));
      continue;
    }
    const auto& blocked = pot.blocked[u];
    bool has_zero = false;
    std::vector<ArcId> nonpos;
    for (ArcId e : g.out_arcs(u)) {
      if (!scope[e]) continue;
      const Rational& x = rbar.at(e);
      if (contains(blocked, e)) {
        ensure(x.sign() <= 0, "blocked arc with positive r̄" + where(u));
      } else {
        ensure(x.sign() >= 0, "unblocked arc with negative r̄" + where(u));
        has_zero = has_zero || x.sign() == 0;
      }
      if (x.sign() <= 0) nonpos.push_back(e);
    }
    for (ArcId e : blocked) ensure(scope[e], "blocked arc leaves U" + where(u));
    ensure(has_zero, "no zero unblocked arc" + where(u));
    ensure(!oracle.is_independent(u, nonpos), "nonpositive arcs independent" + where(u));
  }

  auto keep = [&](ArcId e) { return static_cast<bool>(run.nonpositive[e]); };
  auto path = shortest_path(g, s, t, r_blocker, keep);
  if (!path) throw Error(ErrorCode::kNoPathInSubgraph, "no start-t path over nonpositive arcs");
  run.path = *path;

  run.blocker_sets.assign(n, {});
  run.chooser_sets.assign(n, {});
  std::vector<ArcId> path_arc(n, kNoArc);
  for (ArcId e : run.path) path_arc[g.tail(e)] = e;
  for (Vertex u = 0; u < n; ++u) {
    if (u == t) continue;
    auto& block = run.blocker_sets[u];
    auto& offer = run.chooser_sets[u];
    if (!in_u[u]) {
      for (ArcId e : g.out_arcs(u)) {
        if (in_u[g.head(e)]) block.push_back(e);
      }
      offer = greedy_dependent_set(oracle, u);
    } else {
      if (ArcId pe = path_arc[u]; pe != kNoArc) {
        // Block exactly the blocked arcs that are strictly cheaper than the
        // path arc, which makes the path arc the cheapest one left.
        for (ArcId e : pot.blocked[u]) {
          if (rbar.at(e) < rbar.at(pe)) block.push_back(e);
        }
        std::optional<Rational> lo;
        for (ArcId e : g.out_arcs(u)) {
          if (scope[e] && !contains(block, e) && (!lo || rbar.at(e) < *lo)) lo = rbar.at(e);
        }
        ensure(lo && *lo == rbar.at(pe), "path arc is not the cheapest unblocked arc" + where(u));
      } else {
        block = pot.blocked[u];
      }
      for (ArcId e : g.out_arcs(u)) {
        if (run.nonpositive[e]) offer.push_back(e);
      }
    }
    std::sort(block.begin(), block.end());
    std::sort(offer.begin(), offer.end());
    ensure(oracle.is_independent(u, block), "blocking set dependent" + where(u));
    ensure(!oracle.is_independent(u, offer), "offered set independent" + where(u));
  }
  return run;
}

struct InterdictionNE {
  InterdictionSituation situation;
  std::optional<std::vector<ArcId>> path;
  Cost cost1;
  Cost cost2;
  NEKind kind = NEKind::kTerminal;
  InterdictionRoute route = InterdictionRoute::kBlockerCannotForce;
  Potentials potentials;            // of the run that produced the equilibrium
  std::vector<std::optional<Rational>> rbar;
};

inline std::vector<ArcId> complement_in(const Digraph& g, Vertex u, const std::vector<ArcId>& set) {
  std::vector<ArcId> out;
  for (ArcId e : g.out_arcs(u)) {
    if (std::find(set.begin(), set.end(), e) == set.end()) out.push_back(e);
  }
  return out;
}

inline InterdictionNE solve_interdiction(const InterdictionGame& game) {
  validate_interdiction(game);
  const Digraph& g = game.graph;
  const Vertex s = game.start;
  const Vertex t = game.terminal;
  const int n = game.num_vertices();
  InterdictionNE res;

  BlockerRun primary = run_blocker_side(g, s, t, *game.oracle, game.r2, game.r1);
  if (primary.start_finite) {
    res.situation = {primary.blocker_sets, primary.chooser_sets};
    res.path = primary.path;
    res.route = InterdictionRoute::kBlockerCannotForce;
    res.potentials = std::move(primary.potentials);
    res.rbar = std::move(primary.rbar.rbar);
  } else {
    // Player 2 as the blocker of the dual system: blocking E(u) \ sigma2(u),
    // while player 1 offers E(u) \ sigma1(u).
    OraclePtr dual = dual_oracle(game.oracle);
    BlockerRun swapped = run_blocker_side(g, s, t, *dual, game.r1, game.r2);
    res.situation.sigma1.assign(n, {});
    res.situation.sigma2.assign(n, {});
    if (swapped.start_finite) {
      for (Vertex u = 0; u < n; ++u) {
        if (u == t) continue;
        res.situation.sigma1[u] = complement_in(g, u, swapped.chooser_sets[u]);
        res.situation.sigma2[u] = complement_in(g, u, swapped.blocker_sets[u]);
      }
      res.path = swapped.path;
      res.route = InterdictionRoute::kChooserCannotForce;
      res.potentials = std::move(swapped.potentials);
      res.rbar = std::move(swapped.rbar.rbar);
    } else {
      for (Vertex u = 0; u < n; ++u) {
        if (u == t) continue;
        res.situation.sigma1[u] = primary.potentials.blocked[u];
        std::sort(res.situation.sigma1[u].begin(), res.situation.sigma1[u].end());
        res.situation.sigma2[u] = complement_in(g, u, swapped.potentials.blocked[u]);
      }
      res.route = InterdictionRoute::kBothForce;
      res.kind = NEKind::kCyclic;
      res.potentials = std::move(primary.potentials);
      // Each forcing strategy alone disconnects t from the start.
      InterdictionSituation only1{res.situation.sigma1, std::vector<std::vector<ArcId>>(n)};
      InterdictionSituation only2{std::vector<std::vector<ArcId>>(n), res.situation.sigma2};
      for (Vertex u = 0; u < n; ++u) {
        if (u == t) continue;
        only1.sigma2[u] = std::vector<ArcId>(g.out_arcs(u).begin(), g.out_arcs(u).end());
      }
      auto act1 = active_arcs(game, only1);
      auto act2 = active_arcs(game, only2);
      ensure(!reachable_from(g, s, [&](ArcId e) { return static_cast<bool>(act1[e]); })[t],
             "player 1 forcing strategy leaves a path");
      ensure(!reachable_from(g, s, [&](ArcId e) { return static_cast<bool>(act2[e]); })[t],
             "player 2 forcing strategy leaves a path");
    }
  }
  ensure(is_valid_interdiction_situation(game, res.situation), "constructed situation is invalid");
  InterdictionOutcome outcome = interdiction_cost(game, res.situation);
  res.cost1 = outcome.cost1;
  res.cost2 = outcome.cost2;
  if (res.kind == NEKind::kTerminal) {
    ensure(outcome.common_path.has_value(), "constructed path is not common shortest");
    ensure(outcome.cost1 == effective_cost(*res.path, game.r1) &&
               outcome.cost2 == effective_cost(*res.path, game.r2),
           "constructed path costs differ from the situation's costs");
  } else {
    ensure(!outcome.common_path.has_value(), "cyclic equilibrium has a path");
  }
  return res;
}

// Interdiction game equivalent to an SP game: the owner of each position
// blocks every move but the chosen one there.
inline InterdictionGame interdiction_from_sp(const SPGame& game, Player blocker = Player::kOne) {
  InterdictionGame out;
  out.graph = game.graph;
  out.start = game.start;
  out.terminal = game.terminal();
  out.oracle = sp_oracle(game, blocker);
  out.r1 = game.r1;
  out.r2 = game.r2;
  out.vertex_names = game.vertex_names;
  out.arc_names = game.arc_names;
  return out;
}

// ---- reduction to an SP game ------------------------------------------

inline constexpr int kDefaultReductionCap = 4096;

// Reduced SP game: every original vertex u becomes a player-1 position with a
// move to a new player-2 position u_I for every independent set I at u, and
// u_I moves along the arcs of E(u) \ I. Moves (u, u_I) cost 0 originally; a
// potential of half the cheapest out-arc of u at each u_I (and 0 on original
// vertices) makes all costs positive without changing any start-t path cost.
struct Reduction {
  SPGame game;
  std::vector<Rational> raw_r1;  // before the potential shift
  std::vector<Rational> raw_r2;
  std::vector<std::vector<std::vector<ArcId>>> sets;  // independent sets per original vertex
  std::vector<std::vector<Vertex>> set_vertex;        // (u, k) -> u_I
  std::vector<Vertex> origin_vertex;                  // reduced vertex -> original vertex
  std::vector<int> set_index;                         // reduced vertex -> k, or -1
  std::vector<ArcId> origin_arc;                      // reduced arc -> original arc, or kNoArc
  std::vector<Rational> potential1;
  std::vector<Rational> potential2;
};

inline Reduction reduce_to_sp(const InterdictionGame& game, int cap = kDefaultReductionCap) {
  validate_interdiction(game);
  const Digraph& g = game.graph;
  const int n = game.num_vertices();
  Reduction red;
  red.sets.assign(n, {});
  long total = 0;
  for (Vertex u = 0; u < n; ++u) {
    if (u == game.terminal) continue;
    if (g.out_degree(u) > kMaxEnumeratedGround) {
      throw Error(ErrorCode::kCapExceeded, "out-degree too large for the reduction");
    }
    red.sets[u] = independent_sets(*game.oracle, u);
    total += static_cast<long>(red.sets[u].size());
    if (total > cap) throw Error(ErrorCode::kCapExceeded, "too many independent sets for the reduction");
  }
  SPGame& sp = red.game;
  for (Vertex u = 0; u < n; ++u) {
    sp.add_vertex(u == game.terminal ? Owner::kTerminal : Owner::kPlayer1, game.vertex_names[u]);
    red.origin_vertex.push_back(u);
    red.set_index.push_back(-1);
  }
  sp.start = game.start;
  red.set_vertex.assign(n, {});
  red.potential1.assign(n, Rational(0));
  red.potential2.assign(n, Rational(0));
  for (Vertex u = 0; u < n; ++u) {
    if (u == game.terminal) continue;
    Rational min1 = game.r1[g.out_arcs(u)[0]];
    Rational min2 = game.r2[g.out_arcs(u)[0]];
    for (ArcId e : g.out_arcs(u)) {
      min1 = std::min(min1, game.r1[e]);
      min2 = std::min(min2, game.r2[e]);
    }
    const Rational shift1 = min1 * Rational(1, 2);
    const Rational shift2 = min2 * Rational(1, 2);
    for (std::size_t k = 0; k < red.sets[u].size(); ++k) {
      const auto& blocked = red.sets[u][k];
      std::string label = game.vertex_names[u] + "|";
      for (std::size_t j = 0; j < blocked.size(); ++j) {
        label += (j ? "," : "") + game.arc_names[blocked[j]];
      }
      Vertex ui = sp.add_vertex(Owner::kPlayer2, label);
      red.set_vertex[u].push_back(ui);
      red.origin_vertex.push_back(u);
      red.set_index.push_back(static_cast<int>(k));
      red.potential1.push_back(shift1);
      red.potential2.push_back(shift2);
      sp.add_arc(u, ui, shift1, shift2, "choose:" + label);
      red.raw_r1.push_back(Rational(0));
      red.raw_r2.push_back(Rational(0));
      red.origin_arc.push_back(kNoArc);
      for (ArcId e : g.out_arcs(u)) {
        if (std::find(blocked.begin(), blocked.end(), e) != blocked.end()) continue;
        sp.add_arc(ui, g.head(e), game.r1[e] - shift1, game.r2[e] - shift2,
                   label + ">" + game.arc_names[e]);
        red.raw_r1.push_back(game.r1[e]);
        red.raw_r2.push_back(game.r2[e]);
        red.origin_arc.push_back(e);
      }
    }
  }
  return red;
}

// Maps a situation of the reduced game back: player 1 blocks the set it
// moved to, player 2 offers every arc it would take from any u_I.
inline InterdictionSituation lift_situation(const InterdictionGame& game, const Reduction& red,
                                            const Situation& sit) {
  const int n = game.num_vertices();
  InterdictionSituation out{std::vector<std::vector<ArcId>>(n), std::vector<std::vector<ArcId>>(n)};
  for (Vertex u = 0; u < n; ++u) {
    if (u == game.terminal) continue;
    ArcId choose = sit.sigma1[u];
    Vertex ui = red.game.graph.head(choose);
    out.sigma1[u] = red.sets[u][red.set_index[ui]];
    for (Vertex w : red.set_vertex[u]) out.sigma2[u].push_back(red.origin_arc[sit.sigma2[w]]);
    std::sort(out.sigma2[u].begin(), out.sigma2[u].end());
    out.sigma2[u].erase(std::unique(out.sigma2[u].begin(), out.sigma2[u].end()), out.sigma2[u].end());
  }
  return out;
}

// The converse map: player 1 moves to the vertex of its blocked set; at u_I
// player 2 takes the lowest offered arc not in I.
inline Situation lower_situation(const InterdictionGame& game, const Reduction& red,
                                 const InterdictionSituation& sit) {
  const SPGame& sp = red.game;
  Situation out{Strategy(sp.num_vertices(), kNoArc), Strategy(sp.num_vertices(), kNoArc)};
  for (Vertex u = 0; u < game.num_vertices(); ++u) {
    if (u == game.terminal) continue;
    std::vector<ArcId> blocked = sit.sigma1[u];
    std::sort(blocked.begin(), blocked.end());
    for (std::size_t k = 0; k < red.sets[u].size(); ++k) {
      if (red.sets[u][k] == blocked) out.sigma1[u] = sp.graph.out_arcs(u)[k];
    }
    if (out.sigma1[u] == kNoArc) throw Error(ErrorCode::kInvalidInput, "blocking set is not independent");
    for (std::size_t k = 0; k < red.sets[u].size(); ++k) {
      Vertex ui = red.set_vertex[u][k];
      for (ArcId a : sp.graph.out_arcs(ui)) {
        const auto& offer = sit.sigma2[u];
        if (std::find(offer.begin(), offer.end(), red.origin_arc[a]) != offer.end()) {
          out.sigma2[ui] = a;
          break;
        }
      }
      if (out.sigma2[ui] == kNoArc) throw Error(ErrorCode::kInvalidInput, "offered set is not dependent");
    }
  }
  return out;
}

}  // namespace spgame

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

// Nash equilibria in pure positional strategies for positive two-person SP
// games.
//
// solve() picks one of three constructions:
//  * some player (the "weak" one) cannot force +inf: reweight the strong
//    player's costs by its shortest-longest potentials, fix the strong player
//    on zero-reweighted moves, and let the play be the weak player's shortest
//    path in what remains (construct_ne_terminal);
//  * both players can force +inf: the two forcing strategies form a cyclic
//    equilibrium.
// construct_ne_zero_arcs() is the alternative construction for games in which
// neither player can cut any vertex from t; it is exposed for cross-checks.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spgame/digraph.hpp"
#include "spgame/error.hpp"
#include "spgame/game.hpp"
#include "spgame/rational.hpp"
#include "spgame/shortest_longest.hpp"

namespace spgame {

// r̄(u,v) = r(u,v) + phi(v) - phi(u) on the arcs in scope; undefined elsewhere.
struct TransformedCosts {
  std::vector<std::optional<Rational>> rbar;
  std::vector<Cost> phi;

  bool in_scope(ArcId e) const { return rbar[e].has_value(); }
  const Rational& at(ArcId e) const {
    if (!rbar[e]) throw Error(ErrorCode::kInternalInvariant, "transformed cost outside scope");
    return *rbar[e];
  }
};

inline std::vector<bool> all_arcs(const Digraph& g) { return std::vector<bool>(g.num_arcs(), true); }

// Arcs whose endpoints both satisfy `inside`.
inline std::vector<bool> arcs_within(const Digraph& g, const std::vector<bool>& inside) {
  std::vector<bool> scope(g.num_arcs(), false);
  for (ArcId e = 0; e < g.num_arcs(); ++e) scope[e] = inside[g.tail(e)] && inside[g.head(e)];
  return scope;
}

inline TransformedCosts potential_transform(const Digraph& g, std::span<const Rational> r,
                                            std::span<const Cost> phi,
                                            const std::vector<bool>& scope) {
  TransformedCosts out;
  out.rbar.assign(g.num_arcs(), std::nullopt);
  out.phi.assign(phi.begin(), phi.end());
  for (ArcId e = 0; e < g.num_arcs(); ++e) {
    if (!scope[e]) continue;
    const Cost& pu = phi[g.tail(e)];
    const Cost& pv = phi[g.head(e)];
    if (pu.is_infinite() || pv.is_infinite()) {
      throw Error(ErrorCode::kInfinitePotential, "scope arc " + std::to_string(e) + " touches +inf potential");
    }
    out.rbar[e] = r[e] + pv.value() - pu.value();
  }
  return out;
}

inline TransformedCosts potential_transform(const Digraph& g, std::span<const Rational> r,
                                            const Potentials& pot, const std::vector<bool>& scope) {
  return potential_transform(g, r, pot.phi, scope);
}

struct ForceResult {
  bool can_force = false;
  std::optional<Strategy> strategy;   // set when can_force
  std::vector<Vertex> force_set;      // vertices the player can cut from t
};

// Whether `player` has a positional strategy leaving no path from the start
// to t. The force set is where the opponent's shortest-longest value is +inf.
inline ForceResult can_force_infinity(const SPGame& game, Player player) {
  Potentials pot = sp_shortest_longest(game, opponent(player));
  ForceResult out;
  out.force_set = pot.infinite;
  out.can_force = pot.in_infinite_set(game.start);
  if (!out.can_force) return out;
  const Digraph& g = game.graph;
  Strategy s = default_strategy(game, player);
  for (Vertex u : pot.infinite) {
    if (!game.owned_by(u, player)) continue;
    for (ArcId e : g.out_arcs(u)) {
      if (pot.in_infinite_set(g.head(e))) {
        s[u] = e;
        break;
      }
    }
    ensure(pot.in_infinite_set(g.head(s[u])), "forcing vertex without a move into the force set");
  }
  Vertex t = game.terminal();
  ensure(!reachable_from(g, game.start, fixed_strategy_filter(game, player, s))[t],
         "forcing strategy leaves a path to t");
  out.strategy = std::move(s);
  return out;
}

// Whether `player` can cut some vertex other than the start from t.
inline bool can_block(const SPGame& game, Player player) {
  Potentials pot = sp_shortest_longest(game, opponent(player));
  for (Vertex v : pot.infinite) {
    if (v != game.start) return true;
  }
  return false;
}

enum class NEKind { kTerminal, kCyclic };

enum class Route {
  kWeakPlayerTwo,   // player 2 cannot force +inf
  kWeakPlayerOne,   // player 1 cannot force +inf
  kZeroArcs,        // neither player can cut any vertex
  kBothForce,       // cyclic
};

inline const char* route_name(Route r) {
  switch (r) {
    case Route::kWeakPlayerTwo: return "weak-player-2";
    case Route::kWeakPlayerOne: return "weak-player-1";
    case Route::kZeroArcs: return "zero-arcs";
    case Route::kBothForce: return "both-force";
  }
  return "unknown";
}

struct Certificate {
  Route route = Route::kWeakPlayerTwo;
  // Potentials of the player whose costs were reweighted (both for kZeroArcs).
  std::vector<Cost> phi1;
  std::vector<Cost> phi2;
  std::vector<std::optional<Rational>> rbar1;
  std::vector<std::optional<Rational>> rbar2;
  std::vector<Vertex> infinite;  // B of the reweighted player; force sets for kBothForce
  std::vector<Vertex> infinite_other;
  std::vector<ArcId> h_arcs;
  std::vector<ArcId> path;
};

struct NEResult {
  Situation situation;
  Play play;
  NEKind kind = NEKind::kTerminal;
  Certificate certificate;
};

inline void require_solvable(const SPGame& game) {
  game.terminal();
  for (ArcId e = 0; e < game.num_arcs(); ++e) {
    if (game.r1[e].sign() <= 0 || game.r2[e].sign() <= 0) {
      throw Error(ErrorCode::kInvalidInput, "costs must be positive (arc " + game.arc_names[e] + ")");
    }
  }
  for (Vertex v = 0; v < game.num_vertices(); ++v) {
    if ((game.graph.out_degree(v) == 0) != (game.owner[v] == Owner::kTerminal)) {
      throw Error(ErrorCode::kInvalidInput, "vertex " + game.vertex_names[v] +
                                                " must be terminal exactly when it has no moves");
    }
  }
}

// ---- zero-arc construction ---------------------------------------------

// Builds a terminal equilibrium from reweighted costs satisfying, for each
// player i at each of its positions u:
//   (L1) min over moves of r̄_i is 0,
//   (L2) some move has r̄_i = 0 and r̄_{3-i} <= 0,
//   (L3) some move has r̄_{3-i} = 0,
// in a game whose original cycles are positive for both players.
inline NEResult construct_ne_zero_arcs(const SPGame& game, const TransformedCosts& rbar1,
                                       const TransformedCosts& rbar2) {
  const Digraph& g = game.graph;
  const Vertex t = game.terminal();
  auto rb = [&](Player p) -> const TransformedCosts& { return p == Player::kOne ? rbar1 : rbar2; };
  auto fail = [&](const std::string& cond, Vertex u) {
    throw Error(ErrorCode::kPreconditionViolated, cond + " fails at vertex " + game.vertex_names[u]);
  };
  if (has_nonpositive_cycle(g, game.r1) || has_nonpositive_cycle(g, game.r2)) {
    throw Error(ErrorCode::kPreconditionViolated, "original costs have a nonpositive cycle");
  }
  std::vector<ArcId> h(game.num_vertices(), kNoArc);
  Situation sit{Strategy(game.num_vertices(), kNoArc), Strategy(game.num_vertices(), kNoArc)};
  for (Vertex u = 0; u < game.num_vertices(); ++u) {
    if (game.owner[u] == Owner::kTerminal) continue;
    Player i = game.owner[u] == Owner::kPlayer1 ? Player::kOne : Player::kTwo;
    const auto& own = rb(i);
    const auto& other = rb(opponent(i));
    std::optional<Rational> min_own;
    ArcId l2 = kNoArc;
    ArcId l3 = kNoArc;
    for (ArcId e : g.out_arcs(u)) {
      if (!own.in_scope(e) || !other.in_scope(e)) fail("transformed costs cover E(u)", u);
      if (!min_own || own.at(e) < *min_own) min_own = own.at(e);
      if (l2 == kNoArc && own.at(e).sign() == 0 && other.at(e).sign() <= 0) l2 = e;
      if (l3 == kNoArc && other.at(e).sign() == 0) l3 = e;
    }
    if (!min_own || min_own->sign() != 0) fail("(L1)", u);
    if (l2 == kNoArc) fail("(L2)", u);
    if (l3 == kNoArc) fail("(L3)", u);
    h[u] = l2;
    sit.strategy(i)[u] = l3;
  }
  // H is a functional graph on the non-terminal vertices; it must be acyclic.
  std::vector<int> state(game.num_vertices(), 0);
  for (Vertex root = 0; root < game.num_vertices(); ++root) {
    std::vector<Vertex> trail;
    Vertex v = root;
    while (game.owner[v] != Owner::kTerminal && state[v] == 0) {
      state[v] = 1;
      trail.push_back(v);
      v = g.head(h[v]);
    }
    if (game.owner[v] != Owner::kTerminal && state[v] == 1) {
      throw Error(ErrorCode::kCycleInH, "zero-arc subgraph H has a cycle through " + game.vertex_names[v]);
    }
    for (Vertex w : trail) state[w] = 2;
  }
  std::vector<ArcId> path;
  for (Vertex v = game.start; v != t; v = g.head(h[v])) path.push_back(h[v]);
  for (ArcId e : path) {
    Vertex u = g.tail(e);
    sit.strategy(game.owner[u] == Owner::kPlayer1 ? Player::kOne : Player::kTwo)[u] = e;
  }
  NEResult res;
  res.situation = std::move(sit);
  res.play = play_of(game, res.situation);
  ensure(res.play.is_terminal() && res.play.path() == path, "zero-arc play differs from the H-path");
  res.kind = NEKind::kTerminal;
  res.certificate.route = Route::kZeroArcs;
  res.certificate.phi1 = rbar1.phi;
  res.certificate.phi2 = rbar2.phi;
  res.certificate.rbar1 = rbar1.rbar;
  res.certificate.rbar2 = rbar2.rbar;
  for (Vertex u = 0; u < game.num_vertices(); ++u) {
    if (h[u] != kNoArc) res.certificate.h_arcs.push_back(h[u]);
  }
  res.certificate.path = std::move(path);
  return res;
}

struct ZeroArcPotentials {
  Potentials phi1;
  Potentials phi2;
  TransformedCosts rbar1;
  TransformedCosts rbar2;
};

// Shortest-longest potentials of both players, valid when neither player can
// cut any vertex from t; the reweighted costs then have min 0 over a
// player's own moves and max 0 over the opponent's moves, for both metrics.
inline ZeroArcPotentials zero_arc_potentials(const SPGame& game) {
  require_solvable(game);
  ZeroArcPotentials out{sp_shortest_longest(game, Player::kOne),
                        sp_shortest_longest(game, Player::kTwo), {}, {}};
  if (!out.phi1.infinite.empty() || !out.phi2.infinite.empty()) {
    throw Error(ErrorCode::kBlockerExists, "a player can cut some vertex from t");
  }
  out.rbar1 = potential_transform(game.graph, game.r1, out.phi1, all_arcs(game.graph));
  out.rbar2 = potential_transform(game.graph, game.r2, out.phi2, all_arcs(game.graph));
  return out;
}

// Violations of: min r̄_i = 0 over moves at positions of i, max r̄_i = 0 at
// positions of the opponent, for both i.
inline std::vector<std::string> zero_arc_violations(const SPGame& game, const TransformedCosts& rbar1,
                                                    const TransformedCosts& rbar2) {
  std::vector<std::string> bad;
  for (Player i : {Player::kOne, Player::kTwo}) {
    const auto& rb = i == Player::kOne ? rbar1 : rbar2;
    for (Vertex u = 0; u < game.num_vertices(); ++u) {
      if (game.owner[u] == Owner::kTerminal) continue;
      std::optional<Rational> lo, hi;
      for (ArcId e : game.graph.out_arcs(u)) {
        if (!rb.in_scope(e)) {
          bad.push_back("arc outside scope at " + game.vertex_names[u]);
          continue;
        }
        if (!lo || rb.at(e) < *lo) lo = rb.at(e);
        if (!hi || rb.at(e) > *hi) hi = rb.at(e);
      }
      bool own = game.owned_by(u, i);
      const auto& extreme = own ? lo : hi;
      if (!extreme || extreme->sign() != 0) {
        bad.push_back(std::string(own ? "min" : "max") + " of rbar" + std::to_string(index_of(i)) +
                      " != 0 at " + game.vertex_names[u]);
      }
    }
  }
  return bad;
}

// ---- weak-player construction -------------------------------------------

inline NEResult construct_ne_terminal(const SPGame& game, Player weak) {
  require_solvable(game);
  const Digraph& g = game.graph;
  const Player strong = opponent(weak);
  const Vertex s = game.start;
  const Vertex t = game.terminal();
  const auto& r_strong = game.costs(strong);
  const auto& r_weak = game.costs(weak);

  Potentials pot = sp_shortest_longest(game, strong);
  if (pot.in_infinite_set(s)) {
    throw Error(ErrorCode::kWeakPlayerCanForce,
                "player " + std::to_string(index_of(weak)) + " can force +inf");
  }
  std::vector<bool> in_u(game.num_vertices());
  for (Vertex v = 0; v < game.num_vertices(); ++v) in_u[v] = pot.phi[v].is_finite();
  const std::vector<bool> scope = arcs_within(g, in_u);
  TransformedCosts rbar = potential_transform(g, r_strong, pot, scope);

  // Closure of the infinite set: the strong player cannot leave it, the weak
  // player cannot enter it from outside, and can always stay inside.
  for (Vertex u = 0; u < game.num_vertices(); ++u) {
    if (game.owner[u] == Owner::kTerminal) continue;
    bool weak_owns = game.owned_by(u, weak);
    bool stays = false;
    for (ArcId e : g.out_arcs(u)) {
      bool head_in_b = !in_u[g.head(e)];
      if (!in_u[u] && !weak_owns) ensure(head_in_b, "strong move leaves B at " + game.vertex_names[u]);
      if (in_u[u] && weak_owns) ensure(!head_in_b, "weak move enters B at " + game.vertex_names[u]);
      stays = stays || head_in_b;
    }
    if (!in_u[u] && weak_owns) ensure(stays, "weak position in B cannot stay in B");
  }

  Situation sit{Strategy(game.num_vertices(), kNoArc), Strategy(game.num_vertices(), kNoArc)};
  Strategy& s_strong = sit.strategy(strong);
  Strategy& s_weak = sit.strategy(weak);
  std::vector<bool> in_h(g.num_arcs(), false);
  for (Vertex u = 0; u < game.num_vertices(); ++u) {
    if (!game.owned_by(u, strong)) continue;
    if (!in_u[u]) {
      s_strong[u] = g.out_arcs(u)[0];
      continue;
    }
    std::optional<Rational> lo;
    for (ArcId e : g.out_arcs(u)) {
      if (!scope[e]) continue;
      if (!lo || rbar.at(e) < *lo) lo = rbar.at(e);
      if (s_strong[u] == kNoArc && rbar.at(e).sign() == 0) s_strong[u] = e;
    }
    ensure(lo && lo->sign() == 0, "min reweighted strong move != 0 at " + game.vertex_names[u]);
    in_h[s_strong[u]] = true;
  }
  for (Vertex u = 0; u < game.num_vertices(); ++u) {
    if (!game.owned_by(u, weak) || !in_u[u]) continue;
    std::optional<Rational> hi;
    for (ArcId e : g.out_arcs(u)) {
      if (!hi || rbar.at(e) > *hi) hi = rbar.at(e);
    }
    ensure(hi && hi->sign() == 0, "max reweighted weak move != 0 at " + game.vertex_names[u]);
  }

  auto keep = [&](ArcId e) {
    return scope[e] && (in_h[e] || game.owned_by(g.tail(e), weak));
  };
  auto path = shortest_path(g, s, t, r_weak, keep);
  if (!path) throw Error(ErrorCode::kNoPathInSubgraph, "no path from start to t in (U, H + weak moves)");
  std::vector<Cost> check = distances_to(g, t, r_weak, keep);
  ensure(check[s] == effective_cost(*path, r_weak), "weak player's path is not shortest");

  std::vector<bool> on_path(game.num_vertices(), false);
  for (ArcId e : *path) {
    on_path[g.tail(e)] = true;
    ensure(rbar.at(e).sign() <= 0, "path arc with positive reweighted strong cost");
    if (game.owned_by(g.tail(e), weak)) s_weak[g.tail(e)] = e;
  }
  for (Vertex u = 0; u < game.num_vertices(); ++u) {
    if (!game.owned_by(u, weak) || on_path[u]) continue;
    for (ArcId e : g.out_arcs(u)) {
      bool ok = in_u[u] ? rbar.at(e).sign() == 0 : !in_u[g.head(e)];
      if (ok) {
        s_weak[u] = e;
        break;
      }
    }
    ensure(s_weak[u] != kNoArc, "no admissible weak move at " + game.vertex_names[u]);
  }

  NEResult res;
  res.situation = std::move(sit);
  res.play = play_of(game, res.situation);
  ensure(res.play.is_terminal() && res.play.path() == *path, "play differs from the constructed path");
  res.kind = NEKind::kTerminal;
  Certificate& cert = res.certificate;
  cert.route = weak == Player::kTwo ? Route::kWeakPlayerTwo : Route::kWeakPlayerOne;
  (strong == Player::kOne ? cert.phi1 : cert.phi2) = pot.phi;
  (strong == Player::kOne ? cert.rbar1 : cert.rbar2) = rbar.rbar;
  cert.infinite = pot.infinite;
  for (ArcId e = 0; e < g.num_arcs(); ++e) {
    if (in_h[e]) cert.h_arcs.push_back(e);
  }
  cert.path = *path;
  return res;
}

inline NEResult solve(const SPGame& game) {
  require_solvable(game);
  ForceResult two = can_force_infinity(game, Player::kTwo);
  if (!two.can_force) return construct_ne_terminal(game, Player::kTwo);
  ForceResult one = can_force_infinity(game, Player::kOne);
  if (!one.can_force) return construct_ne_terminal(game, Player::kOne);
  NEResult res;
  res.situation = Situation{*one.strategy, *two.strategy};
  res.play = play_of(game, res.situation);
  ensure(!res.play.is_terminal(), "pair of forcing strategies reaches t");
  res.kind = NEKind::kCyclic;
  res.certificate.route = Route::kBothForce;
  res.certificate.infinite = one.force_set;
  res.certificate.infinite_other = two.force_set;
  return res;
}

}  // namespace spgame

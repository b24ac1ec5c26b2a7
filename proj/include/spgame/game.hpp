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

// Two-person shortest-path games: positions owned by player 1, player 2 or
// terminal; each arc carries a positive cost for each player. Plays,
// effective costs, validation and the normalization passes live here.

#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spgame/digraph.hpp"
#include "spgame/error.hpp"
#include "spgame/rational.hpp"

namespace spgame {

enum class Player { kOne = 1, kTwo = 2 };
enum class Owner { kPlayer1, kPlayer2, kTerminal };

inline Player opponent(Player p) { return p == Player::kOne ? Player::kTwo : Player::kOne; }
inline Owner owner_of(Player p) { return p == Player::kOne ? Owner::kPlayer1 : Owner::kPlayer2; }
inline int index_of(Player p) { return static_cast<int>(p); }

struct SPGame {
  Digraph graph;
  std::vector<Owner> owner;
  Vertex start = 0;
  std::vector<Rational> r1;
  std::vector<Rational> r2;
  std::vector<std::string> vertex_names;
  std::vector<std::string> arc_names;

  int num_vertices() const { return graph.num_vertices(); }
  int num_arcs() const { return graph.num_arcs(); }

  const std::vector<Rational>& costs(Player p) const { return p == Player::kOne ? r1 : r2; }
  std::vector<Rational>& costs(Player p) { return p == Player::kOne ? r1 : r2; }

  bool owned_by(Vertex v, Player p) const { return owner[v] == owner_of(p); }

  std::vector<Vertex> terminals() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < num_vertices(); ++v) {
      if (owner[v] == Owner::kTerminal) out.push_back(v);
    }
    return out;
  }

  // The unique terminal; throws when there is not exactly one.
  Vertex terminal() const {
    auto ts = terminals();
    if (ts.size() != 1) {
      throw Error(ErrorCode::kInvalidInput,
                  "expected exactly one terminal, found " + std::to_string(ts.size()));
    }
    return ts.front();
  }

  Vertex add_vertex(Owner o, std::string name) {
    Vertex v = graph.add_vertex();
    owner.push_back(o);
    vertex_names.push_back(std::move(name));
    return v;
  }

  ArcId add_arc(Vertex tail, Vertex head, Rational c1, Rational c2, std::string name = {}) {
    ArcId e = graph.add_arc(tail, head);
    r1.push_back(c1);
    r2.push_back(c2);
    arc_names.push_back(name.empty() ? "e" + std::to_string(e) : std::move(name));
    return e;
  }

  friend bool operator==(const SPGame&, const SPGame&) = default;
};

// A positional strategy: one chosen arc per vertex of its owner, kNoArc
// everywhere else.
using Strategy = std::vector<ArcId>;

struct Situation {
  Strategy sigma1;
  Strategy sigma2;

  const Strategy& strategy(Player p) const { return p == Player::kOne ? sigma1 : sigma2; }
  Strategy& strategy(Player p) { return p == Player::kOne ? sigma1 : sigma2; }

  friend bool operator==(const Situation&, const Situation&) = default;
};

// Lowest-index legal strategy for `p`.
inline Strategy default_strategy(const SPGame& game, Player p) {
  Strategy s(game.num_vertices(), kNoArc);
  for (Vertex v = 0; v < game.num_vertices(); ++v) {
    if (game.owned_by(v, p) && game.graph.out_degree(v) > 0) s[v] = game.graph.out_arcs(v)[0];
  }
  return s;
}

inline bool is_valid_strategy(const SPGame& game, Player p, const Strategy& s) {
  if (static_cast<int>(s.size()) != game.num_vertices()) return false;
  for (Vertex v = 0; v < game.num_vertices(); ++v) {
    if (!game.owned_by(v, p)) {
      if (s[v] != kNoArc) return false;
      continue;
    }
    if (s[v] < 0 || s[v] >= game.num_arcs() || game.graph.tail(s[v]) != v) return false;
  }
  return true;
}

inline bool is_valid_situation(const SPGame& game, const Situation& sit) {
  return is_valid_strategy(game, Player::kOne, sit.sigma1) &&
         is_valid_strategy(game, Player::kTwo, sit.sigma2);
}

enum class PlayKind { kTerminal, kLasso };

struct Play {
  PlayKind kind = PlayKind::kTerminal;
  std::vector<ArcId> stem;   // whole path for a terminal play
  std::vector<ArcId> cycle;  // empty for a terminal play
  Cost cost1;
  Cost cost2;

  bool is_terminal() const { return kind == PlayKind::kTerminal; }
  const std::vector<ArcId>& path() const { return stem; }
  const Cost& cost(Player p) const { return p == Player::kOne ? cost1 : cost2; }
};

inline Cost effective_cost(std::span<const ArcId> path, std::span<const Rational> r) {
  Rational sum(0);
  for (ArcId e : path) sum += r[e];
  return Cost(sum);
}

// The subpath p[u,w] of a simple path; empty when u == w. Throws when u does
// not precede w on the path.
inline std::vector<ArcId> subpath(const Digraph& g, std::span<const ArcId> path, Vertex u,
                                  Vertex w) {
  std::vector<ArcId> out;
  if (u == w) return out;
  bool inside = false;
  for (ArcId e : path) {
    if (!inside && g.tail(e) == u) inside = true;
    if (inside) {
      out.push_back(e);
      if (g.head(e) == w) return out;
    }
  }
  throw Error(ErrorCode::kInvalidInput, "subpath endpoints not ordered along the path");
}

// Follows the situation from the start. The first revisited vertex closes the
// lasso cycle; lassos cost +inf for both players in a positive game.
inline Play play_of(const SPGame& game, const Situation& sit) {
  const Digraph& g = game.graph;
  Play play;
  std::vector<int> position(game.num_vertices(), -1);
  std::vector<ArcId> walk;
  Vertex v = game.start;
  while (game.owner[v] != Owner::kTerminal) {
    position[v] = static_cast<int>(walk.size());
    ArcId e = game.owner[v] == Owner::kPlayer1 ? sit.sigma1[v] : sit.sigma2[v];
    if (e == kNoArc || g.tail(e) != v) {
      throw Error(ErrorCode::kInvalidInput, "situation has no legal move at " + game.vertex_names[v]);
    }
    walk.push_back(e);
    v = g.head(e);
    if (position[v] >= 0) {
      play.kind = PlayKind::kLasso;
      play.stem.assign(walk.begin(), walk.begin() + position[v]);
      play.cycle.assign(walk.begin() + position[v], walk.end());
      play.cost1 = Cost::infinity();
      play.cost2 = Cost::infinity();
      return play;
    }
  }
  play.kind = PlayKind::kTerminal;
  play.stem = std::move(walk);
  play.cost1 = effective_cost(play.stem, game.r1);
  play.cost2 = effective_cost(play.stem, game.r2);
  return play;
}

// Arc filter of the graph where `p` is fixed to `strategy` and the opponent
// keeps all moves.
inline ArcFilter fixed_strategy_filter(const SPGame& game, Player p, const Strategy& strategy) {
  return [&game, p, &strategy](ArcId e) {
    Vertex u = game.graph.tail(e);
    return !game.owned_by(u, p) || strategy[u] == e;
  };
}

struct ValidationReport {
  bool positive = true;
  bool terminal_iff_sink = true;
  bool single_terminal = true;
  bool all_reach_terminal = true;      // every vertex has a path to a terminal
  bool cycles_positive = true;         // no cycle of length <= 0 for either player
  bool all_reachable_from_start = true;
  bool has_terminal_path = true;
  std::vector<std::string> issues;

  bool ok() const {
    return positive && terminal_iff_sink && all_reach_terminal && cycles_positive &&
           all_reachable_from_start && has_terminal_path;
  }
};

inline ValidationReport validate(const SPGame& game) {
  ValidationReport rep;
  const Digraph& g = game.graph;
  const int n = game.num_vertices();
  if (!g.valid(game.start)) {
    rep.has_terminal_path = false;
    rep.issues.push_back("start vertex out of range");
    return rep;
  }
  for (ArcId e = 0; e < game.num_arcs(); ++e) {
    if (game.r1[e].sign() <= 0 || game.r2[e].sign() <= 0) {
      rep.positive = false;
      rep.issues.push_back("nonpositive cost on arc " + game.arc_names[e]);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    bool sink = g.out_degree(v) == 0;
    if (sink != (game.owner[v] == Owner::kTerminal)) {
      rep.terminal_iff_sink = false;
      rep.issues.push_back("vertex " + game.vertex_names[v] +
                           (sink ? " has no moves but is not terminal" : " is terminal but has moves"));
    }
  }
  auto ts = game.terminals();
  rep.single_terminal = ts.size() == 1;
  std::vector<bool> to_terminal(n, false);
  for (Vertex t : ts) {
    auto r = reaching(g, t);
    for (Vertex v = 0; v < n; ++v) to_terminal[v] = to_terminal[v] || r[v];
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!to_terminal[v]) {
      rep.all_reach_terminal = false;
      rep.issues.push_back("vertex " + game.vertex_names[v] + " cannot reach a terminal");
    }
  }
  rep.has_terminal_path = to_terminal[game.start];
  if (!rep.has_terminal_path) rep.issues.push_back("no path from start to a terminal");
  auto from_start = reachable_from(g, game.start);
  for (Vertex v = 0; v < n; ++v) {
    if (!from_start[v]) {
      rep.all_reachable_from_start = false;
      rep.issues.push_back("vertex " + game.vertex_names[v] + " unreachable from start");
    }
  }
  if (has_nonpositive_cycle(g, game.r1) || has_nonpositive_cycle(g, game.r2)) {
    rep.cycles_positive = false;
    rep.issues.push_back("directed cycle of nonpositive length");
  }
  return rep;
}

struct NormalizeOptions {
  bool merge_terminals = true;
  bool prune_unreachable = true;
  bool bipartize = false;
};

struct Normalized {
  SPGame game;
  std::vector<Vertex> vertex_map;  // original vertex -> new vertex, or -1 if pruned
  std::vector<ArcId> arc_map;      // original arc -> new arc leaving the original tail, or kNoArc
};

// Merges terminals, prunes what the start cannot reach, and optionally
// subdivides every arc between two positions of the same player with a
// position of the other player carrying half of each cost.
inline Normalized normalize_mapped(const SPGame& in, const NormalizeOptions& options = {}) {
  const Digraph& g = in.graph;
  const int n = in.num_vertices();
  for (ArcId e = 0; e < in.num_arcs(); ++e) {
    if (in.r1[e].sign() <= 0 || in.r2[e].sign() <= 0) {
      throw Error(ErrorCode::kInvalidInput, "normalize requires positive costs");
    }
  }
  // (i) terminal merging: representative = first terminal.
  std::vector<Vertex> rep(n);
  Vertex first_terminal = -1;
  for (Vertex v = 0; v < n; ++v) {
    rep[v] = v;
    if (in.owner[v] == Owner::kTerminal && options.merge_terminals) {
      if (first_terminal < 0) first_terminal = v;
      rep[v] = first_terminal;
    }
  }
  // (iii) reachability from the start in the merged graph.
  std::vector<bool> keep(n, true);
  if (options.prune_unreachable) {
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{rep[in.start]};
    seen[rep[in.start]] = true;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (ArcId e : g.out_arcs(u)) {
        Vertex v = rep[g.head(e)];
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    keep = seen;
  }
  Normalized out;
  out.vertex_map.assign(n, -1);
  out.arc_map.assign(in.num_arcs(), kNoArc);
  for (Vertex v = 0; v < n; ++v) {
    if (rep[v] == v && keep[v]) {
      out.vertex_map[v] = out.game.add_vertex(in.owner[v], in.vertex_names[v]);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (rep[v] != v && keep[rep[v]]) out.vertex_map[v] = out.vertex_map[rep[v]];
  }
  out.game.start = out.vertex_map[in.start];
  SPGame& ng = out.game;
  for (ArcId e = 0; e < in.num_arcs(); ++e) {
    Vertex u = g.tail(e);
    if (rep[u] != u || !keep[u]) continue;
    Vertex nu = out.vertex_map[u];
    Vertex nw = out.vertex_map[g.head(e)];
    Owner ou = ng.owner[nu];
    Owner ow = ng.owner[nw];
    if (options.bipartize && ou == ow && ou != Owner::kTerminal) {
      Owner mid_owner = ou == Owner::kPlayer1 ? Owner::kPlayer2 : Owner::kPlayer1;
      Vertex mid = ng.add_vertex(mid_owner, in.vertex_names[u] + "~" + in.arc_names[e]);
      Rational half(1, 2);
      out.arc_map[e] = ng.add_arc(nu, mid, in.r1[e] * half, in.r2[e] * half, in.arc_names[e]);
      ng.add_arc(mid, nw, in.r1[e] * half, in.r2[e] * half, in.arc_names[e] + "~2");
    } else {
      out.arc_map[e] = ng.add_arc(nu, nw, in.r1[e], in.r2[e], in.arc_names[e]);
    }
  }
  bool has_path = false;
  for (Vertex t : ng.terminals()) {
    if (reaching(ng.graph, t)[ng.start]) has_path = true;
  }
  if (!has_path) throw Error(ErrorCode::kNoTerminalPath, "no path from start to a terminal");
  return out;
}

inline SPGame normalize(const SPGame& in, const NormalizeOptions& options = {}) {
  return normalize_mapped(in, options).game;
}

// Carries a situation of the original game over to the normalized one.
// Subdivision positions take their only move.
inline Situation map_situation(const SPGame& original, const Normalized& norm, const Situation& sit) {
  const SPGame& ng = norm.game;
  Situation out{Strategy(ng.num_vertices(), kNoArc), Strategy(ng.num_vertices(), kNoArc)};
  for (Vertex v = 0; v < original.num_vertices(); ++v) {
    Vertex nv = norm.vertex_map[v];
    if (nv < 0 || ng.owner[nv] == Owner::kTerminal) continue;
    ArcId e = original.owner[v] == Owner::kPlayer1 ? sit.sigma1[v] : sit.sigma2[v];
    Strategy& s = ng.owner[nv] == Owner::kPlayer1 ? out.sigma1 : out.sigma2;
    if (s[nv] == kNoArc) s[nv] = norm.arc_map[e];
  }
  for (Vertex nv = 0; nv < ng.num_vertices(); ++nv) {
    if (ng.owner[nv] == Owner::kTerminal) continue;
    Strategy& s = ng.owner[nv] == Owner::kPlayer1 ? out.sigma1 : out.sigma2;
    if (s[nv] == kNoArc && ng.graph.out_degree(nv) == 1) s[nv] = ng.graph.out_arcs(nv)[0];
  }
  return out;
}

// The converse of map_situation. Positions pruned away take their lowest
// move; subdivision positions have a single move and drop out.
inline Situation unmap_situation(const SPGame& original, const Normalized& norm, const Situation& sit) {
  Situation out{default_strategy(original, Player::kOne), default_strategy(original, Player::kTwo)};
  for (Vertex v = 0; v < original.num_vertices(); ++v) {
    Vertex nv = norm.vertex_map[v];
    if (nv < 0 || original.owner[v] == Owner::kTerminal) continue;
    const Owner o = norm.game.owner[nv];
    ArcId chosen = o == Owner::kPlayer1 ? sit.sigma1[nv] : sit.sigma2[nv];
    Strategy& s = original.owner[v] == Owner::kPlayer1 ? out.sigma1 : out.sigma2;
    for (ArcId e : original.graph.out_arcs(v)) {
      if (norm.arc_map[e] == chosen) s[v] = e;
    }
  }
  return out;
}

// One-player truncated caterpillar of depth n: a main path v0..vn with arc
// costs 4^-k, and a terminating arc of cost 2*4^-k after k main moves.
// Terminals are already merged into t.
inline SPGame caterpillar(int depth) {
  if (depth < 1) throw Error(ErrorCode::kInvalidInput, "caterpillar depth must be >= 1");
  SPGame game;
  std::vector<Vertex> spine;
  for (int k = 0; k <= depth; ++k) {
    spine.push_back(game.add_vertex(Owner::kPlayer1, "v" + std::to_string(k)));
  }
  Vertex t = game.add_vertex(Owner::kTerminal, "t");
  Rational step(1);
  for (int k = 0; k <= depth; ++k) {
    if (k < depth) {
      game.add_arc(spine[k], spine[k + 1], step, step, "m" + std::to_string(k));
    }
    Rational stop = Rational(2) * step;
    game.add_arc(spine[k], t, stop, stop, "x" + std::to_string(k));
    step = step * Rational(1, 4);
  }
  game.start = spine[0];
  return game;
}

inline Vertex find_vertex(const SPGame& game, const std::string& name) {
  for (Vertex v = 0; v < game.num_vertices(); ++v) {
    if (game.vertex_names[v] == name) return v;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown vertex '" + name + "'");
}

inline ArcId find_arc(const SPGame& game, const std::string& name) {
  for (ArcId e = 0; e < game.num_arcs(); ++e) {
    if (game.arc_names[e] == name) return e;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown arc '" + name + "'");
}

}  // namespace spgame

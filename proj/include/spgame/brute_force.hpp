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

// Exhaustive ground truth for small games: equilibrium checks by deviation
// enumeration, shortest-longest values over all admissible subgraphs, a
// search for terminal equilibria, and seeded random instances.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spgame/digraph.hpp"
#include "spgame/error.hpp"
#include "spgame/game.hpp"
#include "spgame/independence.hpp"
#include "spgame/interdiction.hpp"
#include "spgame/ne_solver.hpp"
#include "spgame/rational.hpp"

namespace spgame {

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

// SPGAME_CAP overrides `fallback` when set to a positive integer.
inline std::int64_t enumeration_cap(std::int64_t fallback = kDefaultEnumerationCap) {
  if (const char* env = std::getenv("SPGAME_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

namespace detail {

// Product of the sizes, or cap + 1 once it exceeds the cap.
inline std::int64_t bounded_product(const std::vector<std::int64_t>& sizes, std::int64_t cap) {
  std::int64_t total = 1;
  for (std::int64_t s : sizes) {
    if (s == 0) return 0;
    if (total > cap / s) return cap + 1;
    total *= s;
  }
  return total;
}

// Advances a mixed-radix counter; false after the last value.
inline bool next_index(std::vector<std::size_t>& index, const std::vector<std::int64_t>& radix) {
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (static_cast<std::int64_t>(++index[i]) < radix[i]) return true;
    index[i] = 0;
  }
  return false;
}

}  // namespace detail

// ---- SP games ----------------------------------------------------------

struct Deviation {
  Player player = Player::kOne;
  Strategy strategy;
  Cost before;
  Cost after;
};

struct NECheck {
  bool is_ne = true;
  std::optional<Deviation> witness;
};

// Tries every positional strategy of each player against the other's fixed
// strategy, recomputing the play from scratch each time.
inline NECheck verify_ne(const SPGame& game, const Situation& sit,
                         std::int64_t cap = enumeration_cap()) {
  if (!is_valid_situation(game, sit)) throw Error(ErrorCode::kInvalidInput, "invalid situation");
  const Play base = play_of(game, sit);
  for (Player p : {Player::kOne, Player::kTwo}) {
    std::vector<Vertex> own;
    std::vector<std::int64_t> radix;
    for (Vertex v = 0; v < game.num_vertices(); ++v) {
      if (game.owned_by(v, p)) {
        own.push_back(v);
        radix.push_back(game.graph.out_degree(v));
      }
    }
    if (detail::bounded_product(radix, cap) > cap) {
      throw Error(ErrorCode::kCapExceeded, "too many strategies to enumerate");
    }
    std::vector<std::size_t> index(own.size(), 0);
    do {
      Situation dev = sit;
      Strategy& mine = p == Player::kOne ? dev.sigma1 : dev.sigma2;
      for (std::size_t k = 0; k < own.size(); ++k) mine[own[k]] = game.graph.out_arcs(own[k])[index[k]];
      Play play = play_of(game, dev);
      if (play.cost(p) < base.cost(p)) {
        return {false, Deviation{p, mine, base.cost(p), play.cost(p)}};
      }
    } while (detail::next_index(index, radix));
  }
  return {};
}

// Same contract as verify_ne, by best response: against a fixed opponent the
// best a player can do is a shortest path in the graph where the opponent's
// positions keep only their chosen arc.
inline NECheck verify_ne_best_response(const SPGame& game, const Situation& sit) {
  if (!is_valid_situation(game, sit)) throw Error(ErrorCode::kInvalidInput, "invalid situation");
  const Digraph& g = game.graph;
  const Vertex t = game.terminal();
  const Play base = play_of(game, sit);
  for (Player p : {Player::kOne, Player::kTwo}) {
    const Player q = opponent(p);
    auto keep = fixed_strategy_filter(game, q, sit.strategy(q));
    const auto& r = game.costs(p);
    std::vector<Cost> dist = distances_to(g, t, r, keep);
    if (!(dist[game.start] < base.cost(p))) continue;
    Strategy better = sit.strategy(p);
    for (Vertex v = 0; v < game.num_vertices(); ++v) {
      if (!game.owned_by(v, p) || dist[v].is_infinite()) continue;
      for (ArcId e : g.out_arcs(v)) {
        if (Cost(r[e]) + dist[g.head(e)] == dist[v]) {
          better[v] = e;
          break;
        }
      }
    }
    return {false, Deviation{p, better, base.cost(p), dist[game.start]}};
  }
  return {};
}

struct SearchResult {
  bool found = false;
  std::optional<Situation> situation;
  std::optional<ErrorCode> reason;  // kNoTerminalPath when no terminal play exists
  std::int64_t situations_checked = 0;
};

// Scans all situations with a terminal play in odometer order and returns
// the first equilibrium among them.
inline SearchResult search_terminal_ne(const SPGame& game, std::int64_t cap = enumeration_cap()) {
  SearchResult out;
  const Digraph& g = game.graph;
  const Vertex t = game.terminal();
  if (!reachable_from(g, game.start)[t]) {
    out.reason = ErrorCode::kNoTerminalPath;
    return out;
  }
  std::vector<Vertex> movers;
  std::vector<std::int64_t> radix;
  for (Vertex v = 0; v < game.num_vertices(); ++v) {
    if (game.owner[v] != Owner::kTerminal) {
      movers.push_back(v);
      radix.push_back(g.out_degree(v));
    }
  }
  if (detail::bounded_product(radix, cap) > cap) {
    throw Error(ErrorCode::kCapExceeded, "too many situations to enumerate");
  }
  Situation sit{default_strategy(game, Player::kOne), default_strategy(game, Player::kTwo)};
  std::vector<std::size_t> index(movers.size(), 0);
  do {
    for (std::size_t k = 0; k < movers.size(); ++k) {
      Vertex v = movers[k];
      Strategy& s = game.owned_by(v, Player::kOne) ? sit.sigma1 : sit.sigma2;
      s[v] = g.out_arcs(v)[index[k]];
    }
    ++out.situations_checked;
    if (!play_of(game, sit).is_terminal()) continue;
    if (verify_ne_best_response(game, sit).is_ne) {
      out.found = true;
      out.situation = sit;
      return out;
    }
  } while (detail::next_index(index, radix));
  return out;
}

// ---- interdiction games ------------------------------------------------

// Costs by listing every simple start-t path of G(sigma); with positive
// lengths all shortest paths are simple.
inline InterdictionOutcome interdiction_cost_by_paths(const InterdictionGame& game,
                                                      const InterdictionSituation& sit) {
  const Digraph& g = game.graph;
  std::vector<bool> active = active_arcs(game, sit);
  std::vector<std::vector<ArcId>> paths;
  std::vector<ArcId> stack;
  std::vector<bool> on(g.num_vertices(), false);
  auto dfs = [&](auto&& self, Vertex v) -> void {
    if (v == game.terminal) {
      paths.push_back(stack);
      return;
    }
    on[v] = true;
    for (ArcId e : g.out_arcs(v)) {
      if (!active[e] || on[g.head(e)]) continue;
      stack.push_back(e);
      self(self, g.head(e));
      stack.pop_back();
    }
    on[v] = false;
  };
  dfs(dfs, game.start);
  InterdictionOutcome out{Cost::infinity(), Cost::infinity(), std::nullopt};
  if (paths.empty()) return out;
  Cost best1 = Cost::infinity();
  Cost best2 = Cost::infinity();
  for (const auto& p : paths) {
    best1 = std::min(best1, effective_cost(p, game.r1));
    best2 = std::min(best2, effective_cost(p, game.r2));
  }
  for (const auto& p : paths) {
    if (effective_cost(p, game.r1) == best1 && effective_cost(p, game.r2) == best2) {
      out.cost1 = best1;
      out.cost2 = best2;
      out.common_path = p;
      return out;
    }
  }
  return out;
}

struct InterdictionDeviation {
  Player player = Player::kOne;
  std::vector<std::vector<ArcId>> sets;
  Cost before;
  Cost after;
};

struct InterdictionNECheck {
  bool is_ne = true;
  std::optional<InterdictionDeviation> witness;
};

// Player 1 ranges over all independent-set assignments, player 2 over all
// dependent-set assignments.
inline InterdictionNECheck verify_ne_interdiction(const InterdictionGame& game,
                                                  const InterdictionSituation& sit,
                                                  std::int64_t cap = enumeration_cap()) {
  if (!is_valid_interdiction_situation(game, sit)) {
    throw Error(ErrorCode::kInvalidInput, "invalid interdiction situation");
  }
  const InterdictionOutcome base = interdiction_cost(game, sit);
  for (Player p : {Player::kOne, Player::kTwo}) {
    std::vector<Vertex> where;
    std::vector<std::vector<std::vector<ArcId>>> choices;
    std::vector<std::int64_t> radix;
    for (Vertex u = 0; u < game.num_vertices(); ++u) {
      if (u == game.terminal) continue;
      where.push_back(u);
      choices.push_back(p == Player::kOne ? independent_sets(*game.oracle, u)
                                          : dependent_sets(*game.oracle, u));
      radix.push_back(static_cast<std::int64_t>(choices.back().size()));
    }
    if (detail::bounded_product(radix, cap) > cap) {
      throw Error(ErrorCode::kCapExceeded, "too many strategies to enumerate");
    }
    const Cost& before = p == Player::kOne ? base.cost1 : base.cost2;
    std::vector<std::size_t> index(where.size(), 0);
    do {
      InterdictionSituation dev = sit;
      auto& mine = p == Player::kOne ? dev.sigma1 : dev.sigma2;
      for (std::size_t k = 0; k < where.size(); ++k) mine[where[k]] = choices[k][index[k]];
      InterdictionOutcome o = interdiction_cost(game, dev);
      const Cost& after = p == Player::kOne ? o.cost1 : o.cost2;
      if (after < before) return {false, InterdictionDeviation{p, mine, before, after}};
    } while (detail::next_index(index, radix));
  }
  return {};
}

// Best r2 cost player 2 can reach when moving arc by arc after player 1
// committed to sigma1: a shortest path over the unblocked arcs.
inline Cost alternating_best_cost(const InterdictionGame& game, const InterdictionSituation& sit) {
  const Digraph& g = game.graph;
  auto keep = [&](ArcId e) {
    const auto& blocked = sit.sigma1[g.tail(e)];
    return std::find(blocked.begin(), blocked.end(), e) == blocked.end();
  };
  return dijkstra_from(g, game.start, game.r2, keep).dist[game.terminal];
}

// Largest shortest distance to t over every admissible subgraph: one
// independent set removed at every vertex. With `maximal_only`, only maximal
// sets are removed, which suffices since removing more never shortens a path.
inline std::vector<Cost> exhaustive_phi(const Digraph& g, Vertex t, std::span<const Rational> r,
                                        const IndependenceOracle& oracle, bool maximal_only = true,
                                        std::int64_t cap = enumeration_cap()) {
  const int n = g.num_vertices();
  std::vector<Vertex> where;
  std::vector<std::vector<std::vector<ArcId>>> choices;
  std::vector<std::int64_t> radix;
  for (Vertex u = 0; u < n; ++u) {
    if (u == t || g.out_degree(u) == 0) continue;
    where.push_back(u);
    choices.push_back(maximal_only ? maximal_independent_sets(oracle, u) : independent_sets(oracle, u));
    radix.push_back(static_cast<std::int64_t>(choices.back().size()));
  }
  if (detail::bounded_product(radix, cap) > cap) {
    throw Error(ErrorCode::kCapExceeded, "too many admissible subgraphs to enumerate");
  }
  std::vector<Cost> best(n, Cost(0));
  std::vector<bool> removed(g.num_arcs(), false);
  std::vector<std::size_t> index(where.size(), 0);
  auto keep = [&](ArcId e) { return !removed[e]; };
  do {
    std::fill(removed.begin(), removed.end(), false);
    for (std::size_t k = 0; k < where.size(); ++k) {
      for (ArcId e : choices[k][index[k]]) removed[e] = true;
    }
    std::vector<Cost> d = distances_to(g, t, r, keep);
    for (Vertex v = 0; v < n; ++v) best[v] = std::max(best[v], d[v]);
  } while (detail::next_index(index, radix));
  return best;
}

// ---- random instances --------------------------------------------------

enum class GameFilter { kNone, kHasTerminalPath, kBothForce, kNeitherBlocks };

inline const char* filter_name(GameFilter f) {
  switch (f) {
    case GameFilter::kNone: return "none";
    case GameFilter::kHasTerminalPath: return "has-path";
    case GameFilter::kBothForce: return "both-force";
    case GameFilter::kNeitherBlocks: return "neither-blocks";
  }
  return "unknown";
}

struct GeneratorOptions {
  int min_vertices = 2;  // non-terminal vertices
  int max_vertices = 7;
  int min_out = 1;
  int max_out = 3;
  int min_cost = 1;
  int max_cost = 10;
  double player1_share = 0.5;
  GameFilter filter = GameFilter::kNone;
  int max_attempts = 100000;
};

struct InterdictionGeneratorOptions {
  int min_vertices = 2;  // non-terminal vertices
  int max_vertices = 5;
  int min_out = 1;
  int max_out = 3;
  int min_cost = 1;
  int max_cost = 10;
  int max_ground_total = 14;  // sum of |E(u)|
  bool mixed_oracles = false; // also draw cardinality and budget rules
  int max_attempts = 100000;
};

// Whether the game passes `filter`. kNeitherBlocks also excludes a start
// that alone can be cut from t, so that both value functions are finite.
inline bool passes_filter(const SPGame& game, GameFilter filter) {
  switch (filter) {
    case GameFilter::kNone: return true;
    case GameFilter::kHasTerminalPath: return reachable_from(game.graph, game.start)[game.terminal()];
    case GameFilter::kBothForce:
      return reachable_from(game.graph, game.start)[game.terminal()] &&
             can_force_infinity(game, Player::kOne).can_force &&
             can_force_infinity(game, Player::kTwo).can_force;
    case GameFilter::kNeitherBlocks:
      return sp_shortest_longest(game, Player::kOne).infinite.empty() &&
             sp_shortest_longest(game, Player::kTwo).infinite.empty();
  }
  return false;
}

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  // Every vertex reaches t by construction (its first arc points further
  // along a random order). Draws where the start misses some vertex are
  // rejected, so the vertex count stays as drawn and the result passes
  // validate().
  SPGame next_sp(const GeneratorOptions& opt = {}) {
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
      SPGame raw = raw_sp(opt);
      SPGame game = normalize(raw);
      if (game.num_vertices() != raw.num_vertices()) continue;
      if (passes_filter(game, opt.filter)) return game;
    }
    throw Error(ErrorCode::kCapExceeded, std::string("no instance passed filter ") + filter_name(opt.filter));
  }

  InterdictionGame next_interdiction(const InterdictionGeneratorOptions& opt = {}) {
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
      auto game = raw_interdiction(opt);
      if (game) return std::move(*game);
    }
    throw Error(ErrorCode::kCapExceeded, "no interdiction instance within the ground-set bound");
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // Heads for n vertices plus t = n. In a random order starting at vertex 0,
  // the first arc of each vertex goes to a later vertex or to t, and each
  // vertex after the first gets an arc from an earlier one with spare
  // out-degree, so t is reachable from everywhere and everything from 0.
  std::vector<std::vector<Vertex>> random_heads(int n, int min_out, int max_out) {
    std::vector<Vertex> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin() + 1, order.end(), rng_);
    std::vector<std::vector<Vertex>> heads(n);
    std::vector<int> deg(n);
    for (int k = 0; k < n; ++k) {
      Vertex u = order[k];
      deg[u] = uniform(min_out, max_out);
      int later = n - 1 - k;
      int pick = uniform(0, later);
      heads[u].push_back(pick == later ? n : order[k + 1 + pick]);
    }
    for (int k = 1; k < n; ++k) {
      Vertex v = order[k];
      std::vector<Vertex> spare, any;
      for (int j = 0; j < k; ++j) {
        Vertex u = order[j];
        if (u == v) continue;
        if (std::find(heads[u].begin(), heads[u].end(), v) != heads[u].end()) {
          spare.clear();
          any.clear();
          break;  // already entered from an earlier vertex
        }
        const int used = static_cast<int>(heads[u].size());
        if (used < deg[u]) spare.push_back(u);
        if (used < max_out) any.push_back(u);
      }
      const auto& from = spare.empty() ? any : spare;
      if (from.empty()) continue;  // entered already, or no room; rejection handles the rest
      Vertex u = from[uniform(0, static_cast<int>(from.size()) - 1)];
      heads[u].push_back(v);
      deg[u] = std::max(deg[u], static_cast<int>(heads[u].size()));
    }
    for (int u = 0; u < n; ++u) {
      while (static_cast<int>(heads[u].size()) < deg[u]) heads[u].push_back(uniform(0, n));
      std::shuffle(heads[u].begin(), heads[u].end(), rng_);
    }
    return heads;
  }

  SPGame raw_sp(const GeneratorOptions& opt) {
    const int n = uniform(opt.min_vertices, opt.max_vertices);
    SPGame game;
    std::bernoulli_distribution first(opt.player1_share);
    for (int v = 0; v < n; ++v) {
      game.add_vertex(first(rng_) ? Owner::kPlayer1 : Owner::kPlayer2, "v" + std::to_string(v));
    }
    game.add_vertex(Owner::kTerminal, "t");
    game.start = 0;
    auto heads = random_heads(n, opt.min_out, opt.max_out);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v : heads[u]) {
        game.add_arc(u, v, uniform(opt.min_cost, opt.max_cost), uniform(opt.min_cost, opt.max_cost));
      }
    }
    return game;
  }

  std::optional<InterdictionGame> raw_interdiction(const InterdictionGeneratorOptions& opt) {
    const int n = uniform(opt.min_vertices, opt.max_vertices);
    auto heads = random_heads(n, opt.min_out, opt.max_out);
    int total = 0;
    for (const auto& h : heads) total += static_cast<int>(h.size());
    if (total > opt.max_ground_total) return std::nullopt;
    InterdictionGame game;
    for (int v = 0; v <= n; ++v) {
      game.graph.add_vertex();
      game.vertex_names.push_back(v == n ? "t" : "v" + std::to_string(v));
    }
    game.start = 0;
    game.terminal = n;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v : heads[u]) {
        ArcId e = game.graph.add_arc(u, v);
        game.r1.push_back(uniform(opt.min_cost, opt.max_cost));
        game.r2.push_back(uniform(opt.min_cost, opt.max_cost));
        game.arc_names.push_back("e" + std::to_string(e));
      }
    }
    OracleSpec spec;
    for (Vertex u = 0; u <= n; ++u) spec.rules.push_back(random_rule(game.graph, u, opt.mixed_oracles));
    game.oracle = make_oracle(game.graph, std::move(spec));
    return game;
  }

  VertexRule random_rule(const Digraph& g, Vertex u, bool mixed) {
    auto outs = g.out_arcs(u);
    const int m = static_cast<int>(outs.size());
    if (m == 0) return ExplicitRule{};
    int kind = mixed ? uniform(0, 2) : 0;
    if (kind == 1) return CardinalityRule{uniform(0, m - 1)};
    if (kind == 2) {
      BudgetRule rule;
      Rational total(0);
      for (int i = 0; i < m; ++i) {
        rule.costs.push_back(Rational(uniform(1, 4)));
        total += rule.costs.back();
      }
      rule.budget = Rational(uniform(0, static_cast<int>(total.num()) - 1));
      return rule;
    }
    // Up to three random proper subsets as the generating sets.
    ExplicitRule rule;
    int count = uniform(0, 3);
    for (int c = 0; c < count; ++c) {
      std::vector<ArcId> set;
      std::uint64_t mask = std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << m) - 2)(rng_);
      for (int i = 0; i < m; ++i) {
        if (mask & (std::uint64_t{1} << i)) set.push_back(outs[i]);
      }
      rule.maximal_sets.push_back(std::move(set));
    }
    return rule;
  }

  std::mt19937_64 rng_;
};

}  // namespace spgame

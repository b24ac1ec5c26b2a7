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

#include "spgame/ne_solver.hpp"

#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "spgame/brute_force.hpp"

namespace spgame {
namespace {

using testing::both_force_gadget;
using testing::chain;
using testing::return_game;
using testing::single_arc;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInternalInvariant;
}

std::vector<SPGame> random_games(int count, std::uint64_t seed, GameFilter filter = GameFilter::kNone,
                                 int max_vertices = 6) {
  InstanceGenerator gen(seed);
  GeneratorOptions opt;
  opt.filter = filter;
  opt.max_vertices = max_vertices;
  std::vector<SPGame> out;
  for (int i = 0; i < count; ++i) out.push_back(gen.next_sp(opt));
  return out;
}

// All simple start-t paths.
std::vector<std::vector<ArcId>> simple_paths(const Digraph& g, Vertex s, Vertex t) {
  std::vector<std::vector<ArcId>> out;
  std::vector<ArcId> stack;
  std::vector<bool> on(g.num_vertices(), false);
  std::function<void(Vertex)> dfs = [&](Vertex v) {
    if (v == t) {
      out.push_back(stack);
      return;
    }
    on[v] = true;
    for (ArcId e : g.out_arcs(v)) {
      if (on[g.head(e)]) continue;
      stack.push_back(e);
      dfs(g.head(e));
      stack.pop_back();
    }
    on[v] = false;
  };
  dfs(s);
  return out;
}

TEST(PotentialTransform, ZeroPotentialKeepsCosts) {
  SPGame g = chain();
  std::vector<Cost> zero(g.num_vertices(), Cost(0));
  TransformedCosts tc = potential_transform(g.graph, g.r1, zero, all_arcs(g.graph));
  for (ArcId e = 0; e < g.num_arcs(); ++e) EXPECT_EQ(tc.at(e), g.r1[e]);
}

TEST(PotentialTransform, PathCostsTelescope) {
  for (const SPGame& g : random_games(40, 2)) {
    std::vector<Cost> phi;
    for (Vertex v = 0; v < g.num_vertices(); ++v) phi.push_back(Cost(Rational(v * 7 % 5, 3)));
    TransformedCosts tc = potential_transform(g.graph, g.r1, phi, all_arcs(g.graph));
    const Vertex t = g.terminal();
    for (const auto& p : simple_paths(g.graph, g.start, t)) {
      Rational sum(0);
      for (ArcId e : p) sum += tc.at(e);
      EXPECT_EQ(Cost(sum), effective_cost(p, g.r1) + Cost(phi[t].value() - phi[g.start].value()));
    }
  }
}

TEST(PotentialTransform, RejectsInfinitePotentialInScope) {
  SPGame g = return_game();
  Potentials pot = sp_shortest_longest(g, Player::kOne);
  EXPECT_EQ(code_of([&] { potential_transform(g.graph, g.r1, pot, all_arcs(g.graph)); }),
            ErrorCode::kInfinitePotential);
}

TEST(PotentialTransform, PreservesShortestPathsInsideU) {
  for (const SPGame& g : random_games(60, 3)) {
    Potentials pot = sp_shortest_longest(g, Player::kOne);
    if (pot.in_infinite_set(g.start)) continue;
    std::vector<bool> in_u(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) in_u[v] = pot.phi[v].is_finite();
    auto scope = arcs_within(g.graph, in_u);
    TransformedCosts tc = potential_transform(g.graph, g.r1, pot, scope);
    std::set<std::vector<ArcId>> best_r, best_rbar;
    std::optional<Rational> min_r, min_rbar;
    for (const auto& p : simple_paths(g.graph, g.start, g.terminal())) {
      bool inside = std::all_of(p.begin(), p.end(), [&](ArcId e) { return static_cast<bool>(scope[e]); });
      if (!inside) continue;
      Rational r = effective_cost(p, g.r1).value();
      Rational rb(0);
      for (ArcId e : p) rb += tc.at(e);
      if (!min_r || r < *min_r) min_r = r, best_r.clear();
      if (r == *min_r) best_r.insert(p);
      if (!min_rbar || rb < *min_rbar) min_rbar = rb, best_rbar.clear();
      if (rb == *min_rbar) best_rbar.insert(p);
    }
    EXPECT_EQ(best_r, best_rbar);
  }
}

TEST(PotentialTransform, ShortestLongestGivesZeroExtremes) {
  for (const SPGame& g : random_games(100, 4)) {
    for (Player i : {Player::kOne, Player::kTwo}) {
      Potentials pot = sp_shortest_longest(g, i);
      std::vector<bool> in_u(g.num_vertices());
      for (Vertex v = 0; v < g.num_vertices(); ++v) in_u[v] = pot.phi[v].is_finite();
      auto scope = arcs_within(g.graph, in_u);
      TransformedCosts tc = potential_transform(g.graph, g.costs(i), pot, scope);
      for (Vertex u = 0; u < g.num_vertices(); ++u) {
        if (!in_u[u] || g.owner[u] == Owner::kTerminal) continue;
        std::optional<Rational> lo, hi;
        for (ArcId e : g.graph.out_arcs(u)) {
          if (!scope[e]) continue;
          lo = lo ? std::min(*lo, tc.at(e)) : tc.at(e);
          hi = hi ? std::max(*hi, tc.at(e)) : tc.at(e);
        }
        if (g.owned_by(u, i)) {
          ASSERT_TRUE(lo.has_value());
          EXPECT_EQ(*lo, Rational(0));
        } else {
          // The opponent has no move from U into B.
          for (ArcId e : g.graph.out_arcs(u)) EXPECT_TRUE(scope[e]);
          ASSERT_TRUE(hi.has_value());
          EXPECT_EQ(*hi, Rational(0));
        }
      }
    }
  }
}

TEST(Force, SingleArcNeither) {
  SPGame g = single_arc();
  EXPECT_FALSE(can_force_infinity(g, Player::kOne).can_force);
  EXPECT_FALSE(can_force_infinity(g, Player::kTwo).can_force);
}

TEST(Force, ReturnGamePlayerTwoOnly) {
  SPGame g = return_game();
  ForceResult two = can_force_infinity(g, Player::kTwo);
  ASSERT_TRUE(two.can_force);
  EXPECT_EQ((*two.strategy)[1], find_arc(g, "as"));
  EXPECT_FALSE(can_force_infinity(g, Player::kOne).can_force);
}

TEST(Force, GadgetBothPlayers) {
  SPGame g = both_force_gadget();
  ForceResult one = can_force_infinity(g, Player::kOne);
  ForceResult two = can_force_infinity(g, Player::kTwo);
  ASSERT_TRUE(one.can_force && two.can_force);
  EXPECT_EQ((*one.strategy)[0], find_arc(g, "sa"));
  EXPECT_EQ((*two.strategy)[find_vertex(g, "b")], find_arc(g, "bs"));
}

TEST(Force, ForcingStrategyCutsTheTerminal) {
  for (const SPGame& g : random_games(200, 5)) {
    for (Player p : {Player::kOne, Player::kTwo}) {
      ForceResult f = can_force_infinity(g, p);
      // Ground truth: some strategy of p leaves no path.
      bool exists = false;
      std::vector<Vertex> mine;
      for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (g.owned_by(v, p)) mine.push_back(v);
      }
      Strategy s = default_strategy(g, p);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (exists) return;
        if (k == mine.size()) {
          exists = !reachable_from(g.graph, g.start, fixed_strategy_filter(g, p, s))[g.terminal()];
          return;
        }
        for (ArcId e : g.graph.out_arcs(mine[k])) {
          s[mine[k]] = e;
          rec(k + 1);
        }
      };
      rec(0);
      EXPECT_EQ(f.can_force, exists);
    }
  }
}

TEST(Block, ChainNeither) {
  SPGame g = chain();
  EXPECT_FALSE(can_block(g, Player::kOne));
  EXPECT_FALSE(can_block(g, Player::kTwo));
}

TEST(Block, ReturnGamePlayerTwoCutsA) {
  SPGame g = return_game();
  EXPECT_TRUE(can_block(g, Player::kTwo));
  EXPECT_FALSE(can_block(g, Player::kOne));
}

TEST(Block, ForcingOnlyAtTheStartIsNotBlocking) {
  SPGame g;
  Vertex s = g.add_vertex(Owner::kPlayer1, "s");
  Vertex t = g.add_vertex(Owner::kTerminal, "t");
  g.add_arc(s, s, 1, 1, "loop");
  g.add_arc(s, t, 1, 1, "st");
  g.start = s;
  EXPECT_TRUE(can_force_infinity(g, Player::kOne).can_force);
  EXPECT_FALSE(can_block(g, Player::kOne));
  EXPECT_EQ(can_force_infinity(g, Player::kOne).force_set, std::vector<Vertex>{s});
}

TEST(ZeroArcs, ChainOfZeroCosts) {
  SPGame g = chain();
  ZeroArcPotentials z = zero_arc_potentials(g);
  for (ArcId e = 0; e < g.num_arcs(); ++e) {
    EXPECT_EQ(z.rbar1.at(e), Rational(0));
    EXPECT_EQ(z.rbar2.at(e), Rational(0));
  }
  NEResult res = construct_ne_zero_arcs(g, z.rbar1, z.rbar2);
  EXPECT_EQ(res.play.path(), (std::vector<ArcId>{0, 1}));
  EXPECT_EQ(res.certificate.route, Route::kZeroArcs);
}

TEST(ZeroArcs, RawCostsFailThePreconditions) {
  SPGame g = chain();
  TransformedCosts raw1 = potential_transform(g.graph, g.r1, std::vector<Cost>(3, Cost(0)), all_arcs(g.graph));
  TransformedCosts raw2 = potential_transform(g.graph, g.r2, std::vector<Cost>(3, Cost(0)), all_arcs(g.graph));
  EXPECT_EQ(code_of([&] { construct_ne_zero_arcs(g, raw1, raw2); }), ErrorCode::kPreconditionViolated);
}

TEST(ZeroArcs, BlockerExists) {
  EXPECT_EQ(code_of([] { zero_arc_potentials(return_game()); }), ErrorCode::kBlockerExists);
}

TEST(ZeroArcs, PipelineGivesEquilibria) {
  for (const SPGame& g : random_games(150, 6, GameFilter::kNeitherBlocks)) {
    ZeroArcPotentials z = zero_arc_potentials(g);
    auto bad = zero_arc_violations(g, z.rbar1, z.rbar2);
    EXPECT_TRUE(bad.empty()) << bad.front();
    NEResult res = construct_ne_zero_arcs(g, z.rbar1, z.rbar2);
    EXPECT_TRUE(verify_ne(g, res.situation).is_ne);
    // Off the play, every deviation arc has nonnegative reweighted cost.
    for (Player i : {Player::kOne, Player::kTwo}) {
      const auto& rb = i == Player::kOne ? z.rbar1 : z.rbar2;
      for (Vertex u = 0; u < g.num_vertices(); ++u) {
        if (g.owned_by(u, opponent(i))) {
          EXPECT_LE(rb.at(res.situation.strategy(opponent(i))[u]).sign(), 0);
        }
      }
    }
  }
}

TEST(Terminal, ReturnGameWithWeakPlayerOne) {
  SPGame g = return_game();
  NEResult res = construct_ne_terminal(g, Player::kOne);
  EXPECT_TRUE(res.play.is_terminal());
  EXPECT_EQ(res.play.path(), (std::vector<ArcId>{find_arc(g, "sa"), find_arc(g, "at")}));
  EXPECT_TRUE(verify_ne(g, res.situation).is_ne);
  EXPECT_EQ(code_of([&] { construct_ne_terminal(g, Player::kTwo); }), ErrorCode::kWeakPlayerCanForce);
}

TEST(Terminal, PlayAvoidsTheInfiniteSet) {
  // s (P1) -> a, c; a (P2) -> b, t; b (P1) -> b' ; b' (P2) -> b, t;
  // c (P2) -> t. Player 2 can trap the token in {b, b'} but not at s.
  SPGame g;
  Vertex s = g.add_vertex(Owner::kPlayer1, "s");
  Vertex a = g.add_vertex(Owner::kPlayer2, "a");
  Vertex b = g.add_vertex(Owner::kPlayer1, "b");
  Vertex b2 = g.add_vertex(Owner::kPlayer2, "b'");
  Vertex c = g.add_vertex(Owner::kPlayer2, "c");
  Vertex t = g.add_vertex(Owner::kTerminal, "t");
  g.add_arc(s, a, 1, 1, "sa");
  g.add_arc(s, c, 3, 1, "sc");
  g.add_arc(a, b, 1, 1, "ab");
  g.add_arc(a, t, 1, 5, "at");
  g.add_arc(b, b2, 1, 1, "bb'");
  g.add_arc(b2, b, 1, 1, "b'b");
  g.add_arc(b2, t, 1, 1, "b't");
  g.add_arc(c, t, 1, 1, "ct");
  g.start = s;
  Potentials phi1 = sp_shortest_longest(g, Player::kOne);
  EXPECT_EQ(phi1.infinite, (std::vector<Vertex>{a, b, b2}));
  NEResult res = solve(g);
  EXPECT_EQ(res.certificate.route, Route::kWeakPlayerTwo);
  EXPECT_EQ(res.certificate.infinite, (std::vector<Vertex>{a, b, b2}));
  for (ArcId e : res.play.path()) EXPECT_FALSE(phi1.in_infinite_set(g.graph.head(e)));
  EXPECT_TRUE(verify_ne(g, res.situation).is_ne);
}

TEST(Solve, GadgetIsCyclic) {
  SPGame g = both_force_gadget();
  NEResult res = solve(g);
  EXPECT_EQ(res.kind, NEKind::kCyclic);
  EXPECT_TRUE(res.play.cost1.is_infinite() && res.play.cost2.is_infinite());
  EXPECT_TRUE(verify_ne(g, res.situation).is_ne);
  // Each forcing strategy alone already disconnects t.
  EXPECT_FALSE(reachable_from(g.graph, g.start, fixed_strategy_filter(g, Player::kOne, res.situation.sigma1))[3]);
  EXPECT_FALSE(reachable_from(g.graph, g.start, fixed_strategy_filter(g, Player::kTwo, res.situation.sigma2))[3]);
}

TEST(Solve, SinglePath) {
  SPGame g = chain();
  NEResult res = solve(g);
  EXPECT_EQ(res.kind, NEKind::kTerminal);
  EXPECT_EQ(res.play.cost1, Cost(4));
  EXPECT_EQ(res.play.cost2, Cost(6));
}

TEST(Solve, RandomGamesAreEquilibria) {
  for (bool bipartize : {false, true}) {
    for (const SPGame& raw : random_games(300, 7, GameFilter::kNone, 7)) {
      NormalizeOptions opt;
      opt.bipartize = bipartize;
      SPGame g = normalize(raw, opt);
      NEResult res = solve(g);
      EXPECT_EQ(res.play.is_terminal(), res.kind == NEKind::kTerminal);
      NECheck check = verify_ne(g, res.situation);
      EXPECT_TRUE(check.is_ne) << route_name(res.certificate.route);
      EXPECT_EQ(check.is_ne, verify_ne_best_response(g, res.situation).is_ne);
    }
  }
}

// The alternative second phase: keep player 1's zero moves inside U,
// reweight r2 there by plain shortest distances, and solve that subgame with
// the zero-arc construction; then extend into B by moves that stay in B.
TEST(Solve, AlternativeSecondPhaseAgrees) {
  int checked = 0;
  for (const SPGame& g : random_games(300, 9, GameFilter::kNone, 7)) {
    if (can_force_infinity(g, Player::kTwo).can_force) continue;
    const Digraph& gr = g.graph;
    Potentials phi1 = sp_shortest_longest(g, Player::kOne);
    std::vector<bool> in_u(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) in_u[v] = phi1.phi[v].is_finite();
    TransformedCosts rb1 = potential_transform(gr, g.r1, phi1, arcs_within(gr, in_u));
    // Subgame on U.
    SPGame sub;
    std::vector<Vertex> to_sub(g.num_vertices(), -1);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (in_u[v]) to_sub[v] = sub.add_vertex(g.owner[v], g.vertex_names[v]);
    }
    std::vector<ArcId> origin;
    for (ArcId e = 0; e < g.num_arcs(); ++e) {
      Vertex u = gr.tail(e);
      if (!in_u[u] || !in_u[gr.head(e)]) continue;
      if (g.owned_by(u, Player::kOne) && rb1.at(e).sign() != 0) continue;
      sub.add_arc(to_sub[u], to_sub[gr.head(e)], g.r1[e], g.r2[e], g.arc_names[e]);
      origin.push_back(e);
    }
    sub.start = to_sub[g.start];
    std::vector<Cost> phi1_sub, psi;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (in_u[v]) phi1_sub.push_back(phi1.phi[v]);
    }
    psi = distances_to(sub.graph, sub.terminal(), sub.r2);
    TransformedCosts s1 = potential_transform(sub.graph, sub.r1, phi1_sub, all_arcs(sub.graph));
    TransformedCosts s2 = potential_transform(sub.graph, sub.r2, psi, all_arcs(sub.graph));
    NEResult inner = construct_ne_zero_arcs(sub, s1, s2);
    Situation sit{default_strategy(g, Player::kOne), default_strategy(g, Player::kTwo)};
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (g.owner[v] == Owner::kTerminal) continue;
      Strategy& s = g.owned_by(v, Player::kOne) ? sit.sigma1 : sit.sigma2;
      if (in_u[v]) {
        ArcId e = inner.situation.strategy(g.owned_by(v, Player::kOne) ? Player::kOne : Player::kTwo)[to_sub[v]];
        s[v] = origin[e];
      } else {
        for (ArcId e : gr.out_arcs(v)) {
          if (!in_u[gr.head(e)]) {
            s[v] = e;
            break;
          }
        }
      }
    }
    EXPECT_TRUE(verify_ne(g, sit).is_ne);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace spgame

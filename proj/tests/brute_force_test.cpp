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

#include "spgame/brute_force.hpp"

#include <cstdlib>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace spgame {
namespace {

using testing::all_situations;
using testing::both_force_gadget;
using testing::interdict3;

// s (P1) -> a (P2); a -> t is dear for player 2, a -> b -> t is cheap.
SPGame detour_game() {
  SPGame g;
  Vertex s = g.add_vertex(Owner::kPlayer1, "s");
  Vertex a = g.add_vertex(Owner::kPlayer2, "a");
  Vertex b = g.add_vertex(Owner::kPlayer1, "b");
  Vertex t = g.add_vertex(Owner::kTerminal, "t");
  g.add_arc(s, a, 1, 1, "sa");
  g.add_arc(a, t, 1, 5, "at");
  g.add_arc(a, b, 1, 1, "ab");
  g.add_arc(b, t, 1, 1, "bt");
  g.start = s;
  return g;
}

TEST(VerifyNe, GadgetTerminalSituation) {
  SPGame g = both_force_gadget();
  Situation sit{default_strategy(g, Player::kOne), default_strategy(g, Player::kTwo)};
  sit.sigma1[0] = find_arc(g, "sb");
  sit.sigma2[1] = find_arc(g, "as");
  sit.sigma2[2] = find_arc(g, "bt");
  EXPECT_TRUE(play_of(g, sit).is_terminal());
  EXPECT_TRUE(verify_ne(g, sit).is_ne);
  EXPECT_TRUE(verify_ne_best_response(g, sit).is_ne);
}

TEST(VerifyNe, ReportsAnImprovingDeviation) {
  SPGame g = detour_game();
  Situation sit{default_strategy(g, Player::kOne), default_strategy(g, Player::kTwo)};
  sit.sigma2[1] = find_arc(g, "at");
  NECheck check = verify_ne(g, sit);
  ASSERT_FALSE(check.is_ne);
  EXPECT_EQ(check.witness->player, Player::kTwo);
  EXPECT_EQ(check.witness->before, Cost(6));
  EXPECT_EQ(check.witness->after, Cost(3));
  EXPECT_EQ(check.witness->strategy[1], find_arc(g, "ab"));
  NECheck fast = verify_ne_best_response(g, sit);
  ASSERT_FALSE(fast.is_ne);
  EXPECT_EQ(fast.witness->after, Cost(3));
}

TEST(VerifyNe, RejectsInvalidSituations) {
  SPGame g = detour_game();
  Situation sit{default_strategy(g, Player::kOne), default_strategy(g, Player::kTwo)};
  sit.sigma1[0] = find_arc(g, "at");
  EXPECT_THROW(verify_ne(g, sit), Error);
}

TEST(VerifyNe, BothVerifiersAgreeOnEverySituation) {
  InstanceGenerator gen(41);
  GeneratorOptions opt;
  opt.max_vertices = 4;
  int equilibria = 0, total = 0;
  for (int i = 0; i < 60; ++i) {
    SPGame g = gen.next_sp(opt);
    for (const Situation& sit : all_situations(g)) {
      NECheck slow = verify_ne(g, sit);
      NECheck fast = verify_ne_best_response(g, sit);
      EXPECT_EQ(slow.is_ne, fast.is_ne);
      if (!slow.is_ne) {
        EXPECT_EQ(slow.witness->before, fast.witness->before);
      }
      equilibria += slow.is_ne;
      ++total;
    }
  }
  EXPECT_GT(equilibria, 0);
  EXPECT_LT(equilibria, total);
}

TEST(ExhaustivePhi, ThreeVertexExample) {
  InterdictionGame g = interdict3();
  auto phi = exhaustive_phi(g.graph, g.terminal, g.r1, *g.oracle);
  EXPECT_EQ(phi, (std::vector<Cost>{Cost(5), Cost(1), Cost(0)}));
}

TEST(ExhaustivePhi, CutVertexIsInfinite) {
  // s -> a -> t with a loop at s; blocking s -> a cuts t off.
  InterdictionGame g = testing::make_interdiction(3, 0, 2, {{0, 1, 1, 1}, {0, 0, 1, 1}, {1, 2, 1, 1}},
                                                  [](const Digraph&, Vertex v) -> VertexRule {
                                                    return CardinalityRule{v == 0 ? 1 : 0};
                                                  });
  auto phi = exhaustive_phi(g.graph, g.terminal, g.r1, *g.oracle);
  EXPECT_TRUE(phi[0].is_infinite());
  EXPECT_EQ(phi[1], Cost(1));
}

TEST(Search, GadgetFindsTheTerminalEquilibrium) {
  SPGame g = both_force_gadget();
  SearchResult res = search_terminal_ne(g);
  ASSERT_TRUE(res.found);
  EXPECT_EQ(res.situation->sigma1[0], find_arc(g, "sb"));
  EXPECT_EQ(res.situation->sigma2[2], find_arc(g, "bt"));
  EXPECT_TRUE(verify_ne(g, *res.situation).is_ne);
}

TEST(Search, NoTerminalPath) {
  SPGame g;
  Vertex s = g.add_vertex(Owner::kPlayer1, "s");
  g.add_vertex(Owner::kTerminal, "t");
  g.add_arc(s, s, 1, 1, "loop");
  g.start = s;
  SearchResult res = search_terminal_ne(g);
  EXPECT_FALSE(res.found);
  EXPECT_EQ(res.reason, ErrorCode::kNoTerminalPath);
}

TEST(Search, CapIsEnforced) {
  SPGame g = both_force_gadget();
  try {
    search_terminal_ne(g, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
  InterdictionGame ig = interdict3();
  EXPECT_THROW(exhaustive_phi(ig.graph, ig.terminal, ig.r1, *ig.oracle, true, 1), Error);
}

TEST(Search, EnvironmentOverridesTheCap) {
  ::setenv("SPGAME_CAP", "17", 1);
  EXPECT_EQ(enumeration_cap(), 17);
  ::setenv("SPGAME_CAP", "junk", 1);
  EXPECT_EQ(enumeration_cap(), kDefaultEnumerationCap);
  ::unsetenv("SPGAME_CAP");
  EXPECT_EQ(enumeration_cap(), kDefaultEnumerationCap);
}

TEST(Generator, IsDeterministic) {
  InstanceGenerator a(7), b(7);
  for (int i = 0; i < 20; ++i) {
    SPGame x = a.next_sp(), y = b.next_sp();
    EXPECT_EQ(x.owner, y.owner);
    EXPECT_EQ(x.r1, y.r1);
    EXPECT_EQ(x.r2, y.r2);
    EXPECT_EQ(x.graph.num_arcs(), y.graph.num_arcs());
    InterdictionGame p = a.next_interdiction(), q = b.next_interdiction();
    EXPECT_EQ(p.r1, q.r1);
    EXPECT_EQ(p.graph.num_arcs(), q.graph.num_arcs());
  }
}

TEST(Generator, RespectsBoundsAndFilters) {
  InstanceGenerator gen(8);
  for (GameFilter f : {GameFilter::kNone, GameFilter::kHasTerminalPath, GameFilter::kBothForce,
                       GameFilter::kNeitherBlocks}) {
    GeneratorOptions opt;
    opt.filter = f;
    opt.max_vertices = 6;
    for (int i = 0; i < 30; ++i) {
      SPGame g = gen.next_sp(opt);
      EXPECT_TRUE(validate(g).ok());
      EXPECT_LE(g.num_vertices(), 7);
      EXPECT_TRUE(passes_filter(g, f)) << filter_name(f);
      for (ArcId e = 0; e < g.num_arcs(); ++e) {
        EXPECT_GE(g.r1[e], Rational(1));
        EXPECT_LE(g.r1[e], Rational(10));
      }
    }
  }
  InterdictionGeneratorOptions iopt;
  iopt.mixed_oracles = true;
  for (int i = 0; i < 50; ++i) {
    InterdictionGame g = gen.next_interdiction(iopt);
    EXPECT_NO_THROW(validate_interdiction(g));
    EXPECT_LE(g.num_arcs(), iopt.max_ground_total);
  }
}

TEST(InterdictionVerify, OpenThreeVertexGameIsAnEquilibrium) {
  InterdictionGame g = interdict3();
  // Blocking s -> a would raise player 1's cost from 2 to 5.
  InterdictionSituation open{{{}, {}, {}}, {{0, 1}, {2}, {}}};
  EXPECT_TRUE(verify_ne_interdiction(g, open).is_ne);
}

TEST(InterdictionVerify, FindsABetterBlockingSet) {
  // s -> t is r1-shortest, s -> a -> t is r2-shortest, so the open
  // situation costs +inf; blocking s -> a leaves player 1 a cost of 1.
  InterdictionGame g = testing::make_interdiction(3, 0, 2, {{0, 1, 5, 1}, {0, 2, 1, 5}, {1, 2, 1, 1}},
                                                  [](const Digraph&, Vertex v) -> VertexRule {
                                                    return CardinalityRule{v == 0 ? 1 : 0};
                                                  });
  InterdictionSituation open{{{}, {}, {}}, {{0, 1}, {2}, {}}};
  InterdictionNECheck check = verify_ne_interdiction(g, open);
  ASSERT_FALSE(check.is_ne);
  EXPECT_EQ(check.witness->player, Player::kOne);
  EXPECT_TRUE(check.witness->before.is_infinite());
  EXPECT_EQ(check.witness->after, Cost(1));
  EXPECT_EQ(check.witness->sets[0], std::vector<ArcId>{0});
}

}  // namespace
}  // namespace spgame

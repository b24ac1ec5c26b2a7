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

#include "spgame/independence.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace spgame {
namespace {

// One vertex u = 0 with m arcs to t = 1.
Digraph star(int m) {
  Digraph g;
  g.add_vertex();
  g.add_vertex();
  for (int i = 0; i < m; ++i) g.add_arc(0, 1);
  return g;
}

OraclePtr single_rule(const Digraph& g, VertexRule rule) {
  OracleSpec spec;
  spec.rules.push_back(std::move(rule));
  spec.rules.push_back(ExplicitRule{});
  return make_oracle(g, std::move(spec));
}

std::vector<ArcId> arcs(std::initializer_list<ArcId> list) { return list; }

TEST(Cardinality, TwoArcsExceedBoundOne) {
  Digraph g = star(3);
  auto o = single_rule(g, CardinalityRule{1});
  EXPECT_TRUE(is_dependent(*o, 0, arcs({0, 1})));
  EXPECT_TRUE(is_independent(*o, 0, arcs({2})));
  EXPECT_TRUE(is_independent(*o, 0, {}));
}

TEST(Budget, LinearInequality) {
  Digraph g = star(3);
  auto o = single_rule(g, BudgetRule{{2, 3, 4}, 5});
  EXPECT_TRUE(is_independent(*o, 0, arcs({0, 1})));   // 5 <= 5
  EXPECT_TRUE(is_dependent(*o, 0, arcs({1, 2})));     // 7 > 5
  EXPECT_TRUE(is_independent(*o, 0, arcs({2})));
}

TEST(Subsets, ForeignArcIsRejected) {
  Digraph g = star(2);
  g.add_vertex();
  g.add_arc(1, 2);
  OracleSpec spec{{CardinalityRule{1}, CardinalityRule{0}, ExplicitRule{}}};
  auto o = make_oracle(g, spec);
  try {
    is_independent(*o, 0, arcs({2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidSubset);
  }
  EXPECT_THROW(is_independent(*o, 0, arcs({0, 0})), Error);
}

TEST(Spec, RejectsInvalidRules) {
  Digraph g = star(2);
  EXPECT_THROW(single_rule(g, CardinalityRule{2}), Error);
  EXPECT_THROW(single_rule(g, CardinalityRule{-1}), Error);
  EXPECT_THROW(single_rule(g, BudgetRule{{1, 1}, 2}), Error);
  EXPECT_THROW(single_rule(g, BudgetRule{{0, 1}, 0}), Error);
  EXPECT_THROW(single_rule(g, ExplicitRule{{{0, 1}}}), Error);
  EXPECT_THROW(single_rule(g, ExplicitRule{{{3}}}), Error);
  EXPECT_NO_THROW(single_rule(g, ExplicitRule{{{0}, {1}}}));
}

TEST(SpRule, ProperSubsetsAtOwnPositionsOnly) {
  SPGame game = testing::return_game();
  auto blocker2 = sp_oracle(game, Player::kTwo);
  const Vertex a = 1;
  EXPECT_TRUE(blocker2->is_independent(a, std::vector<ArcId>{2}));
  EXPECT_FALSE(blocker2->is_independent(a, std::vector<ArcId>{1, 2}));
  EXPECT_TRUE(blocker2->is_independent(0, {}));
  EXPECT_FALSE(blocker2->is_independent(0, std::vector<ArcId>{0}));
  // Blocking all moves but one is choosing that one.
  EXPECT_EQ(maximal_independent_sets(*blocker2, a).size(), 2u);
}

TEST(Dual, OfNothingBlockableIsProperSubsets) {
  SPGame game = testing::return_game();
  auto dual = dual_oracle(sp_oracle(game, Player::kOne));  // a is not player 1's
  const Vertex a = 1;
  for (const auto& x : all_subsets(dual->ground_set(a))) {
    EXPECT_EQ(dual->is_independent(a, x), x.size() < 2u);
  }
}

TEST(Dual, CardinalityBecomesComplementaryBound) {
  for (int m = 1; m <= 5; ++m) {
    Digraph g = star(m);
    for (int k = 0; k < m; ++k) {
      auto dual = dual_oracle(single_rule(g, CardinalityRule{k}));
      for (const auto& x : all_subsets(g.out_arcs(0))) {
        EXPECT_EQ(dual->is_independent(0, x), static_cast<int>(x.size()) <= m - k - 1);
      }
    }
  }
}

// Random rules of every kind on small stars.
std::vector<std::pair<Digraph, OraclePtr>> random_oracles(int count) {
  std::mt19937_64 rng(99);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<std::pair<Digraph, OraclePtr>> out;
  for (int i = 0; i < count; ++i) {
    const int m = uniform(1, 5);
    Digraph g = star(m);
    VertexRule rule;
    switch (i % 4) {
      case 0: rule = CardinalityRule{uniform(0, m - 1)}; break;
      case 1: {
        BudgetRule b;
        int total = 0;
        for (int j = 0; j < m; ++j) {
          b.costs.push_back(uniform(1, 5));
          total += static_cast<int>(b.costs.back().num());
        }
        b.budget = uniform(0, total - 1);
        rule = b;
        break;
      }
      case 2: {
        ExplicitRule e;
        for (int c = uniform(0, 3); c > 0; --c) {
          std::vector<ArcId> s;
          for (int j = 0; j < m; ++j) {
            if (uniform(0, 1)) s.push_back(j);
          }
          if (static_cast<int>(s.size()) == m) s.pop_back();
          e.maximal_sets.push_back(s);
        }
        rule = e;
        break;
      }
      default: rule = SpRule{uniform(0, 1) == 1}; break;
    }
    OraclePtr o = single_rule(g, rule);
    out.emplace_back(std::move(g), std::move(o));
  }
  return out;
}

bool is_subset(const std::vector<ArcId>& a, const std::vector<ArcId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

TEST(Property, EveryRuleIsAnIndependenceSystem) {
  for (auto& [g, o] : random_oracles(200)) {
    const auto subsets = all_subsets(g.out_arcs(0));
    EXPECT_TRUE(o->is_independent(0, {}));
    EXPECT_FALSE(o->is_independent(0, g.out_arcs(0)));
    for (const auto& x : subsets) {
      if (!o->is_independent(0, x)) continue;
      for (const auto& y : subsets) {
        EXPECT_TRUE(!is_subset(y, x) || o->is_independent(0, y));
      }
    }
    auto dual = dual_oracle(o);
    EXPECT_TRUE(dual->is_independent(0, {}));
    EXPECT_FALSE(dual->is_independent(0, g.out_arcs(0)));
  }
}

TEST(Property, DualIsAnInvolution) {
  for (auto& [g, o] : random_oracles(200)) {
    auto twice = dual_oracle(dual_oracle(o));
    for (const auto& x : all_subsets(g.out_arcs(0))) {
      EXPECT_EQ(twice->is_independent(0, x), o->is_independent(0, x));
    }
  }
}

TEST(Property, MaximalSetsGenerateTheFamily) {
  for (auto& [g, o] : random_oracles(100)) {
    auto maximal = maximal_independent_sets(*o, 0);
    for (const auto& x : all_subsets(g.out_arcs(0))) {
      bool covered = false;
      for (const auto& m : maximal) covered = covered || is_subset(x, m);
      EXPECT_EQ(covered, o->is_independent(0, x));
    }
    EXPECT_EQ(independent_sets(*o, 0).size() + dependent_sets(*o, 0).size(),
              std::size_t{1} << g.out_degree(0));
  }
}

TEST(Enumeration, CapsLargeGroundSets) {
  Digraph g = star(kMaxEnumeratedGround + 1);
  EXPECT_THROW(all_subsets(g.out_arcs(0)), Error);
}

}  // namespace
}  // namespace spgame

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

// Small hand-built games shared by the tests.

#pragma once

#include <functional>
#include <vector>

#include "spgame/game.hpp"
#include "spgame/independence.hpp"
#include "spgame/interdiction.hpp"

namespace spgame::testing {

// Every situation of a small game, in odometer order.
inline std::vector<Situation> all_situations(const SPGame& g) {
  std::vector<Vertex> movers;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.owner[v] != Owner::kTerminal) movers.push_back(v);
  }
  std::vector<Situation> out;
  Situation sit{default_strategy(g, Player::kOne), default_strategy(g, Player::kTwo)};
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == movers.size()) {
      out.push_back(sit);
      return;
    }
    Vertex v = movers[k];
    Strategy& s = g.owner[v] == Owner::kPlayer1 ? sit.sigma1 : sit.sigma2;
    for (ArcId e : g.graph.out_arcs(v)) {
      s[v] = e;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

// s (P1) -> t.
inline SPGame single_arc(Rational c1 = 1, Rational c2 = 2) {
  SPGame g;
  Vertex s = g.add_vertex(Owner::kPlayer1, "s");
  Vertex t = g.add_vertex(Owner::kTerminal, "t");
  g.add_arc(s, t, c1, c2, "st");
  g.start = s;
  return g;
}

// s (P1) -> a (P2) -> t.
inline SPGame chain() {
  SPGame g;
  Vertex s = g.add_vertex(Owner::kPlayer1, "s");
  Vertex a = g.add_vertex(Owner::kPlayer2, "a");
  Vertex t = g.add_vertex(Owner::kTerminal, "t");
  g.add_arc(s, a, 1, 2, "sa");
  g.add_arc(a, t, 3, 4, "at");
  g.start = s;
  return g;
}

// s (P1) -> a (P2); a -> s, a -> t. Player 2 can force +inf.
inline SPGame return_game(Rational back = 1, Rational out = 1) {
  SPGame g;
  Vertex s = g.add_vertex(Owner::kPlayer1, "s");
  Vertex a = g.add_vertex(Owner::kPlayer2, "a");
  Vertex t = g.add_vertex(Owner::kTerminal, "t");
  g.add_arc(s, a, 1, 1, "sa");
  g.add_arc(a, s, back, back, "as");
  g.add_arc(a, t, out, out, "at");
  g.start = s;
  return g;
}

// s (P1) -> a, b; a (P2) -> s; b (P2) -> t, s. Both players can force +inf.
inline SPGame both_force_gadget() {
  SPGame g;
  Vertex s = g.add_vertex(Owner::kPlayer1, "s");
  Vertex a = g.add_vertex(Owner::kPlayer2, "a");
  Vertex b = g.add_vertex(Owner::kPlayer2, "b");
  Vertex t = g.add_vertex(Owner::kTerminal, "t");
  g.add_arc(s, a, 1, 1, "sa");
  g.add_arc(s, b, 1, 1, "sb");
  g.add_arc(a, s, 1, 1, "as");
  g.add_arc(b, t, 1, 1, "bt");
  g.add_arc(b, s, 1, 1, "bs");
  g.start = s;
  return g;
}

inline InterdictionGame make_interdiction(int n, Vertex start, Vertex terminal,
                                          const std::vector<std::tuple<Vertex, Vertex, int, int>>& arcs,
                                          const std::function<VertexRule(const Digraph&, Vertex)>& rule) {
  InterdictionGame g;
  for (int v = 0; v < n; ++v) {
    g.graph.add_vertex();
    g.vertex_names.push_back("v" + std::to_string(v));
  }
  for (auto [u, v, c1, c2] : arcs) {
    ArcId e = g.graph.add_arc(u, v);
    g.r1.push_back(c1);
    g.r2.push_back(c2);
    g.arc_names.push_back("e" + std::to_string(e));
  }
  g.start = start;
  g.terminal = terminal;
  OracleSpec spec;
  for (Vertex v = 0; v < n; ++v) spec.rules.push_back(rule(g.graph, v));
  g.oracle = make_oracle(g.graph, std::move(spec));
  return g;
}

// s=0, a=1, t=2: s -> a (1), s -> t (5), a -> t (1). One arc blockable at s,
// none at a. The shortest-longest value at s is 5.
inline InterdictionGame interdict3() {
  return make_interdiction(3, 0, 2, {{0, 1, 1, 1}, {0, 2, 5, 5}, {1, 2, 1, 1}},
                           [](const Digraph&, Vertex v) -> VertexRule {
                             return CardinalityRule{v == 0 ? 1 : 0};
                           });
}

}  // namespace spgame::testing

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

// Large instances for timing the shortest-longest engine: layers leading to
// t plus one nearby arc per vertex, so the search both settles vertices and
// grows blocked sets.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "spgame/digraph.hpp"
#include "spgame/error.hpp"
#include "spgame/independence.hpp"
#include "spgame/rational.hpp"
#include "spgame/shortest_longest.hpp"

namespace spgame {

enum class BenchOracle { kCardinality, kSp };

struct BenchInstance {
  Digraph graph;
  Vertex target = 0;
  std::vector<Rational> r;
  OraclePtr oracle;
};

inline constexpr int kBenchOutDegree = 4;

inline BenchInstance make_bench_instance(int edges, BenchOracle kind, std::uint64_t seed) {
  if (edges < 4 * kBenchOutDegree) throw Error(ErrorCode::kInvalidInput, "too few edges for a bench instance");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = edges / kBenchOutDegree;
  const int width = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(n))));
  BenchInstance out;
  Digraph& g = out.graph;
  for (int v = 0; v <= n; ++v) g.add_vertex();
  out.target = n;
  auto layer = [&](int v) { return v / width; };
  // Three arcs into the next layer (to t from the last one) and one into a
  // window spanning two layers back to one ahead, so cardinality bounds up to
  // 2 leave every vertex finite.
  for (int u = 0; u < n && g.num_arcs() < edges; ++u) {
    const int lo = (layer(u) + 1) * width;
    for (int k = 0; k < kBenchOutDegree && g.num_arcs() < edges; ++k) {
      Vertex head;
      if (k + 1 < kBenchOutDegree) {
        head = lo >= n ? out.target : uniform(lo, std::min(n - 1, lo + width - 1));
      } else {
        const int back = std::max(0, (layer(u) - 2) * width);
        head = uniform(back, std::min(n - 1, lo + width - 1));
      }
      g.add_arc(u, head);
    }
  }
  for (ArcId e = 0; e < g.num_arcs(); ++e) out.r.push_back(Rational(uniform(1, 100)));
  OracleSpec spec;
  for (Vertex u = 0; u <= n; ++u) {
    const int m = g.out_degree(u);
    if (kind == BenchOracle::kSp) {
      spec.rules.emplace_back(SpRule{m > 0 && uniform(0, 1) == 1});
    } else {
      spec.rules.emplace_back(CardinalityRule{m > 0 ? uniform(0, std::min(2, m - 1)) : 0});
    }
  }
  out.oracle = make_oracle(g, std::move(spec));
  return out;
}

// Minimum wall time in seconds over `repeats` runs.
inline double time_modified_dijkstra(const BenchInstance& inst, int repeats) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    auto start = std::chrono::steady_clock::now();
    Potentials pot = modified_dijkstra(inst.graph, inst.target, inst.r, *inst.oracle);
    auto stop = std::chrono::steady_clock::now();
    if (pot.phi.empty()) throw Error(ErrorCode::kInternalInvariant, "empty potentials");
    best = std::min(best, std::chrono::duration<double>(stop - start).count());
  }
  return best;
}

// Minimum wall time per instance, with the runs interleaved round-robin so
// slow phases of the machine hit every size alike.
inline std::vector<double> time_modified_dijkstra(const std::vector<BenchInstance>& insts, int repeats) {
  std::vector<double> best(insts.size(), 1e300);
  for (int i = 0; i < repeats; ++i) {
    for (std::size_t k = 0; k < insts.size(); ++k) best[k] = std::min(best[k], time_modified_dijkstra(insts[k], 1));
  }
  return best;
}

}  // namespace spgame

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

// Blocking systems: at every vertex u a downward-closed family of subsets of
// the out-arcs E(u) that the blocker may remove. Solvers only query the
// oracle; the enumeration helpers at the bottom are for brute-force checks.

#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spgame/digraph.hpp"
#include "spgame/error.hpp"
#include "spgame/game.hpp"
#include "spgame/rational.hpp"

namespace spgame {

class IndependenceOracle {
 public:
  virtual ~IndependenceOracle() = default;

  virtual int num_vertices() const = 0;
  virtual std::span<const ArcId> ground_set(Vertex u) const = 0;
  // `subset` must be a duplicate-free subset of ground_set(u), in any order.
  virtual bool is_independent(Vertex u, std::span<const ArcId> subset) const = 0;
  virtual std::string_view kind() const = 0;
};

using OraclePtr = std::shared_ptr<const IndependenceOracle>;

// Independent iff contained in one of the listed (maximal) sets.
struct ExplicitRule {
  std::vector<std::vector<ArcId>> maximal_sets;
};
// Independent iff |X| <= bound.
struct CardinalityRule {
  int bound = 0;
};
// Independent iff the blocking costs of X fit in the budget. `costs` is
// aligned with the vertex's out-arc list.
struct BudgetRule {
  std::vector<Rational> costs;
  Rational budget;
};
// Shortest-path game as a special case: at the blocker's own positions every
// proper subset is blockable (the unblocked arc is the chosen move), at the
// other positions nothing is.
struct SpRule {
  bool blocker_owns = false;
};

using VertexRule = std::variant<ExplicitRule, CardinalityRule, BudgetRule, SpRule>;

struct OracleSpec {
  std::vector<VertexRule> rules;  // one per vertex
};

class SpecOracle final : public IndependenceOracle {
 public:
  SpecOracle(const Digraph& g, OracleSpec spec) : spec_(std::move(spec)) {
    const int n = g.num_vertices();
    if (static_cast<int>(spec_.rules.size()) != n) {
      throw Error(ErrorCode::kInvalidInput, "oracle spec needs one rule per vertex");
    }
    ground_.resize(n);
    position_.assign(g.num_arcs(), -1);
    for (Vertex u = 0; u < n; ++u) {
      auto outs = g.out_arcs(u);
      ground_[u].assign(outs.begin(), outs.end());
      for (std::size_t i = 0; i < outs.size(); ++i) position_[outs[i]] = static_cast<int>(i);
    }
    for (Vertex u = 0; u < n; ++u) check_rule(u);
  }

  int num_vertices() const override { return static_cast<int>(ground_.size()); }
  std::span<const ArcId> ground_set(Vertex u) const override { return ground_[u]; }
  std::string_view kind() const override { return "spec"; }
  const OracleSpec& spec() const { return spec_; }

  bool is_independent(Vertex u, std::span<const ArcId> subset) const override {
    const VertexRule& rule = spec_.rules[u];
    if (const auto* card = std::get_if<CardinalityRule>(&rule)) {
      return static_cast<int>(subset.size()) <= card->bound;
    }
    if (const auto* sp = std::get_if<SpRule>(&rule)) {
      if (!sp->blocker_owns) return subset.empty();
      return subset.size() < ground_[u].size();
    }
    if (const auto* budget = std::get_if<BudgetRule>(&rule)) {
      Rational used(0);
      for (ArcId e : subset) used += budget->costs[position_[e]];
      return used <= budget->budget;
    }
    const auto& sets = std::get<ExplicitRule>(rule).maximal_sets;
    std::vector<ArcId> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& s : sets) {
      if (std::includes(s.begin(), s.end(), sorted.begin(), sorted.end())) return true;
    }
    return false;
  }

 private:
  void check_rule(Vertex u) {
    const auto& ground = ground_[u];
    const int m = static_cast<int>(ground.size());
    const std::string where = " at vertex " + std::to_string(u);
    VertexRule& rule = spec_.rules[u];
    if (auto* card = std::get_if<CardinalityRule>(&rule)) {
      if (card->bound < 0 || (m > 0 && card->bound >= m)) {
        throw Error(ErrorCode::kInvalidInput, "cardinality bound must lie in [0, |E(u)|)" + where);
      }
    } else if (auto* budget = std::get_if<BudgetRule>(&rule)) {
      if (static_cast<int>(budget->costs.size()) != m) {
        throw Error(ErrorCode::kInvalidInput, "budget costs must match |E(u)|" + where);
      }
      Rational total(0);
      for (const auto& c : budget->costs) {
        if (c.sign() <= 0) throw Error(ErrorCode::kInvalidInput, "blocking costs must be positive" + where);
        total += c;
      }
      if (budget->budget.sign() < 0 || (m > 0 && total <= budget->budget)) {
        throw Error(ErrorCode::kInvalidInput, "budget must be >= 0 and below the total cost" + where);
      }
    } else if (auto* expl = std::get_if<ExplicitRule>(&rule)) {
      if (expl->maximal_sets.empty()) expl->maximal_sets.push_back({});
      for (auto& s : expl->maximal_sets) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
          throw Error(ErrorCode::kInvalidInput, "duplicate arc in explicit set" + where);
        }
        for (ArcId e : s) {
          if (e < 0 || e >= static_cast<int>(position_.size()) ||
              std::find(ground.begin(), ground.end(), e) == ground.end()) {
            throw Error(ErrorCode::kInvalidInput, "explicit set not within E(u)" + where);
          }
        }
        if (m > 0 && static_cast<int>(s.size()) == m) {
          throw Error(ErrorCode::kInvalidInput, "E(u) itself cannot be independent" + where);
        }
      }
    }
  }

  OracleSpec spec_;
  std::vector<std::vector<ArcId>> ground_;
  std::vector<int> position_;
};

inline OraclePtr make_oracle(const Digraph& g, OracleSpec spec) {
  return std::make_shared<const SpecOracle>(g, std::move(spec));
}

// X is independent in the dual at u iff E(u) \ X is dependent in `base`.
class DualOracle final : public IndependenceOracle {
 public:
  explicit DualOracle(OraclePtr base) : base_(std::move(base)) {}

  int num_vertices() const override { return base_->num_vertices(); }
  std::span<const ArcId> ground_set(Vertex u) const override { return base_->ground_set(u); }
  std::string_view kind() const override { return "dual"; }
  const OraclePtr& base() const { return base_; }

  bool is_independent(Vertex u, std::span<const ArcId> subset) const override {
    auto ground = base_->ground_set(u);
    std::vector<ArcId> complement;
    complement.reserve(ground.size());
    for (ArcId e : ground) {
      if (std::find(subset.begin(), subset.end(), e) == subset.end()) complement.push_back(e);
    }
    return !base_->is_independent(u, complement);
  }

 private:
  OraclePtr base_;
};

inline OraclePtr dual_oracle(OraclePtr base) { return std::make_shared<const DualOracle>(std::move(base)); }

// The blocking system that turns an interdiction game into the given SP game
// with `blocker` choosing at its own positions.
inline OracleSpec sp_oracle_spec(const SPGame& game, Player blocker) {
  OracleSpec spec;
  spec.rules.reserve(game.num_vertices());
  for (Vertex v = 0; v < game.num_vertices(); ++v) {
    spec.rules.emplace_back(SpRule{game.owned_by(v, blocker)});
  }
  return spec;
}

inline OraclePtr sp_oracle(const SPGame& game, Player blocker) {
  return make_oracle(game.graph, sp_oracle_spec(game, blocker));
}

inline void check_subset(const IndependenceOracle& oracle, Vertex u, std::span<const ArcId> subset) {
  auto ground = oracle.ground_set(u);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (std::find(ground.begin(), ground.end(), subset[i]) == ground.end()) {
      throw Error(ErrorCode::kInvalidSubset, "arc " + std::to_string(subset[i]) + " not in E(" +
                                                 std::to_string(u) + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (subset[j] == subset[i]) throw Error(ErrorCode::kInvalidSubset, "duplicate arc in subset");
    }
  }
}

inline bool is_independent(const IndependenceOracle& oracle, Vertex u, std::span<const ArcId> subset) {
  check_subset(oracle, u, subset);
  return oracle.is_independent(u, subset);
}

inline bool is_dependent(const IndependenceOracle& oracle, Vertex u, std::span<const ArcId> subset) {
  return !is_independent(oracle, u, subset);
}

// ---- enumeration, for verification only --------------------------------

inline constexpr int kMaxEnumeratedGround = 20;

inline std::vector<std::vector<ArcId>> all_subsets(std::span<const ArcId> ground) {
  if (static_cast<int>(ground.size()) > kMaxEnumeratedGround) {
    throw Error(ErrorCode::kCapExceeded, "ground set too large to enumerate");
  }
  const std::size_t m = ground.size();
  std::vector<std::vector<ArcId>> out;
  out.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<ArcId> s;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) s.push_back(ground[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<std::vector<ArcId>> independent_sets(const IndependenceOracle& oracle, Vertex u) {
  std::vector<std::vector<ArcId>> out;
  for (auto& s : all_subsets(oracle.ground_set(u))) {
    if (oracle.is_independent(u, s)) out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<std::vector<ArcId>> dependent_sets(const IndependenceOracle& oracle, Vertex u) {
  std::vector<std::vector<ArcId>> out;
  for (auto& s : all_subsets(oracle.ground_set(u))) {
    if (!oracle.is_independent(u, s)) out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<std::vector<ArcId>> maximal_independent_sets(const IndependenceOracle& oracle,
                                                                Vertex u) {
  auto ground = oracle.ground_set(u);
  std::vector<std::vector<ArcId>> out;
  for (auto& s : independent_sets(oracle, u)) {
    bool maximal = true;
    for (ArcId e : ground) {
      if (std::find(s.begin(), s.end(), e) != s.end()) continue;
      std::vector<ArcId> bigger = s;
      bigger.push_back(e);
      if (oracle.is_independent(u, bigger)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace spgame

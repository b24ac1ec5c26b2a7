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

// JSON reading and writing for games, situations and results, plus DOT
// export. Vertices and arcs are referred to by their ids (integers or
// strings); costs are integers, decimal strings or "p/q" strings.

#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "spgame/error.hpp"
#include "spgame/game.hpp"
#include "spgame/independence.hpp"
#include "spgame/interdiction.hpp"
#include "spgame/ne_solver.hpp"
#include "spgame/rational.hpp"
#include "spgame/shortest_longest.hpp"

namespace spgame::io {

using Json = nlohmann::ordered_json;

inline Error bad_input(const std::string& what) { return Error(ErrorCode::kInvalidInput, what); }

inline std::string id_of(const Json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw bad_input(what + " must be an integer or a string");
}

inline Rational cost_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw bad_input(what + ": " + e.what());
    }
  }
  if (j.is_number_float()) throw bad_input(what + ": write fractional costs as strings, e.g. \"0.25\"");
  throw bad_input(what + " must be a number or a string");
}

inline Json cost_to_json(const Rational& r) {
  if (r.is_integer() && r.num() >= INT64_MIN && r.num() <= INT64_MAX) {
    return static_cast<std::int64_t>(r.num());
  }
  return r.to_string();
}

inline Json cost_to_json(const Cost& c) { return c.is_infinite() ? Json("inf") : cost_to_json(c.value()); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad_input(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw bad_input(std::string("malformed JSON: ") + e.what());
  }
}

// Name lookups shared by both game kinds.
struct Names {
  std::map<std::string, Vertex> vertex;
  std::map<std::string, ArcId> arc;

  Vertex v(const Json& j, const std::string& what) const {
    auto it = vertex.find(id_of(j, what));
    if (it == vertex.end()) throw bad_input(what + " refers to unknown vertex " + id_of(j, what));
    return it->second;
  }
  ArcId a(const Json& j, const std::string& what) const {
    auto it = arc.find(id_of(j, what));
    if (it == arc.end()) throw bad_input(what + " refers to unknown arc " + id_of(j, what));
    return it->second;
  }
};

struct RawGraph {
  Digraph graph;
  std::vector<std::string> vertex_names;
  std::vector<std::string> arc_names;
  std::vector<Rational> r1;
  std::vector<Rational> r2;
  Names names;
};

inline RawGraph read_graph(const Json& j) {
  RawGraph raw;
  const Json& vertices = field(j, "vertices");
  const Json& arcs = field(j, "arcs");
  if (!vertices.is_array() || !arcs.is_array()) throw bad_input("vertices and arcs must be arrays");
  for (const Json& v : vertices) {
    std::string id = id_of(field(v, "id"), "vertex id");
    if (!raw.names.vertex.emplace(id, raw.graph.add_vertex()).second) {
      throw bad_input("duplicate vertex id " + id);
    }
    raw.vertex_names.push_back(id);
  }
  for (const Json& a : arcs) {
    std::string id = a.contains("id") ? id_of(a.at("id"), "arc id") : "e" + std::to_string(raw.graph.num_arcs());
    Vertex tail = raw.names.v(field(a, "tail"), "arc " + id + " tail");
    Vertex head = raw.names.v(field(a, "head"), "arc " + id + " head");
    ArcId e = raw.graph.add_arc(tail, head);
    if (!raw.names.arc.emplace(id, e).second) throw bad_input("duplicate arc id " + id);
    raw.arc_names.push_back(id);
    raw.r1.push_back(cost_from_json(field(a, "r1"), "arc " + id + " r1"));
    raw.r2.push_back(cost_from_json(field(a, "r2"), "arc " + id + " r2"));
  }
  return raw;
}

inline Owner owner_from_json(const Json& j) {
  std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "P1") return Owner::kPlayer1;
  if (s == "P2") return Owner::kPlayer2;
  if (s == "T") return Owner::kTerminal;
  throw bad_input("owner must be \"P1\", \"P2\" or \"T\"");
}

inline const char* owner_name(Owner o) {
  switch (o) {
    case Owner::kPlayer1: return "P1";
    case Owner::kPlayer2: return "P2";
    case Owner::kTerminal: return "T";
  }
  return "?";
}

inline SPGame game_from_json(const Json& j) {
  RawGraph raw = read_graph(j);
  SPGame game;
  game.graph = std::move(raw.graph);
  game.vertex_names = std::move(raw.vertex_names);
  game.arc_names = std::move(raw.arc_names);
  game.r1 = std::move(raw.r1);
  game.r2 = std::move(raw.r2);
  for (const Json& v : field(j, "vertices")) game.owner.push_back(owner_from_json(field(v, "owner")));
  game.start = raw.names.v(field(j, "start"), "start");
  return game;
}

inline Json game_to_json(const SPGame& game) {
  Json j;
  j["vertices"] = Json::array();
  for (Vertex v = 0; v < game.num_vertices(); ++v) {
    j["vertices"].push_back({{"id", game.vertex_names[v]}, {"owner", owner_name(game.owner[v])}});
  }
  j["arcs"] = Json::array();
  for (ArcId e = 0; e < game.num_arcs(); ++e) {
    j["arcs"].push_back({{"id", game.arc_names[e]},
                         {"tail", game.vertex_names[game.graph.tail(e)]},
                         {"head", game.vertex_names[game.graph.head(e)]},
                         {"r1", cost_to_json(game.r1[e])},
                         {"r2", cost_to_json(game.r2[e])}});
  }
  j["start"] = game.vertex_names[game.start];
  return j;
}

inline std::vector<ArcId> arc_list(const Names& names, const Json& j, const std::string& what) {
  if (!j.is_array()) throw bad_input(what + " must be an array of arc ids");
  std::vector<ArcId> out;
  for (const Json& a : j) out.push_back(names.a(a, what));
  std::sort(out.begin(), out.end());
  return out;
}

inline VertexRule rule_from_json(const Json& o, const Digraph& g, Vertex u, const Names& names) {
  const std::string kind = field(o, "kind").is_string() ? o.at("kind").get<std::string>() : "";
  const std::string where = "oracle of vertex " + std::to_string(u);
  if (kind == "explicit") {
    ExplicitRule rule;
    for (const Json& s : field(o, "sets")) rule.maximal_sets.push_back(arc_list(names, s, where));
    return rule;
  }
  if (kind == "cardinality") {
    const Json& k = field(o, "k");
    if (!k.is_number_integer()) throw bad_input(where + ": k must be an integer");
    return CardinalityRule{k.get<int>()};
  }
  if (kind == "budget") {
    BudgetRule rule;
    const Json& costs = field(o, "costs");
    if (!costs.is_object()) throw bad_input(where + ": costs must map arc ids to costs");
    auto outs = g.out_arcs(u);
    rule.costs.assign(outs.size(), Rational(0));
    std::vector<bool> seen(outs.size(), false);
    for (auto it = costs.begin(); it != costs.end(); ++it) {
      ArcId e = names.a(Json(it.key()), where);
      auto pos = std::find(outs.begin(), outs.end(), e);
      if (pos == outs.end()) throw bad_input(where + ": arc " + it.key() + " does not leave the vertex");
      rule.costs[pos - outs.begin()] = cost_from_json(it.value(), where);
      seen[pos - outs.begin()] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw bad_input(where + ": every out-arc needs a blocking cost");
    }
    rule.budget = cost_from_json(field(o, "budget"), where);
    return rule;
  }
  if (kind == "sp") return SpRule{owner_from_json(field(o, "owner")) == Owner::kPlayer1};
  throw bad_input(where + ": kind must be explicit, cardinality, budget or sp");
}

inline bool is_interdiction_json(const Json& j) { return j.is_object() && j.contains("oracles"); }

inline InterdictionGame interdiction_from_json(const Json& j) {
  RawGraph raw = read_graph(j);
  InterdictionGame game;
  game.graph = std::move(raw.graph);
  game.vertex_names = std::move(raw.vertex_names);
  game.arc_names = std::move(raw.arc_names);
  game.r1 = std::move(raw.r1);
  game.r2 = std::move(raw.r2);
  const Digraph& g = game.graph;
  game.start = raw.names.v(field(j, "start"), "start");
  if (j.contains("terminal")) {
    game.terminal = raw.names.v(j.at("terminal"), "terminal");
  } else {
    std::vector<Vertex> sinks;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (g.out_degree(v) == 0) sinks.push_back(v);
    }
    if (sinks.size() != 1) throw bad_input("no \"terminal\" given and the graph has no unique sink");
    game.terminal = sinks[0];
  }
  OracleSpec spec;
  spec.rules.assign(g.num_vertices(), ExplicitRule{});
  std::vector<bool> given(g.num_vertices(), false);
  const Json& oracles = field(j, "oracles");
  if (!oracles.is_array()) throw bad_input("oracles must be an array");
  for (const Json& o : oracles) {
    Vertex u = raw.names.v(field(o, "vertex"), "oracle vertex");
    if (given[u]) throw bad_input("two oracles for vertex " + game.vertex_names[u]);
    given[u] = true;
    spec.rules[u] = rule_from_json(o, g, u, raw.names);
  }
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (u != game.terminal && !given[u]) throw bad_input("vertex " + game.vertex_names[u] + " has no oracle");
  }
  game.oracle = make_oracle(g, std::move(spec));
  validate_interdiction(game);
  return game;
}

inline Json arcs_to_json(const std::vector<std::string>& arc_names, std::span<const ArcId> arcs) {
  Json out = Json::array();
  for (ArcId e : arcs) out.push_back(arc_names[e]);
  return out;
}

inline Json interdiction_to_json(const InterdictionGame& game) {
  const Digraph& g = game.graph;
  Json j;
  j["vertices"] = Json::array();
  for (Vertex v = 0; v < g.num_vertices(); ++v) j["vertices"].push_back({{"id", game.vertex_names[v]}});
  j["arcs"] = Json::array();
  for (ArcId e = 0; e < g.num_arcs(); ++e) {
    j["arcs"].push_back({{"id", game.arc_names[e]},
                         {"tail", game.vertex_names[g.tail(e)]},
                         {"head", game.vertex_names[g.head(e)]},
                         {"r1", cost_to_json(game.r1[e])},
                         {"r2", cost_to_json(game.r2[e])}});
  }
  j["start"] = game.vertex_names[game.start];
  j["terminal"] = game.vertex_names[game.terminal];
  j["oracles"] = Json::array();
  const auto* spec_oracle = dynamic_cast<const SpecOracle*>(game.oracle.get());
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (u == game.terminal) continue;
    Json o{{"vertex", game.vertex_names[u]}};
    if (spec_oracle == nullptr) {
      // Arbitrary oracles are written out as their maximal independent sets.
      o["kind"] = "explicit";
      o["sets"] = Json::array();
      for (const auto& s : maximal_independent_sets(*game.oracle, u)) o["sets"].push_back(arcs_to_json(game.arc_names, s));
    } else {
      const VertexRule& rule = spec_oracle->spec().rules[u];
      if (const auto* ex = std::get_if<ExplicitRule>(&rule)) {
        o["kind"] = "explicit";
        o["sets"] = Json::array();
        for (const auto& s : ex->maximal_sets) o["sets"].push_back(arcs_to_json(game.arc_names, s));
      } else if (const auto* card = std::get_if<CardinalityRule>(&rule)) {
        o["kind"] = "cardinality";
        o["k"] = card->bound;
      } else if (const auto* budget = std::get_if<BudgetRule>(&rule)) {
        o["kind"] = "budget";
        Json costs = Json::object();
        auto outs = g.out_arcs(u);
        for (std::size_t i = 0; i < outs.size(); ++i) costs[game.arc_names[outs[i]]] = cost_to_json(budget->costs[i]);
        o["costs"] = costs;
        o["budget"] = cost_to_json(budget->budget);
      } else {
        o["kind"] = "sp";
        o["owner"] = std::get<SpRule>(rule).blocker_owns ? "P1" : "P2";
      }
    }
    j["oracles"].push_back(std::move(o));
  }
  return j;
}

// ---- situations and results --------------------------------------------

inline Json strategy_to_json(const SPGame& game, Player p, const Strategy& s) {
  Json out = Json::object();
  for (Vertex v = 0; v < game.num_vertices(); ++v) {
    if (game.owned_by(v, p)) out[game.vertex_names[v]] = game.arc_names[s[v]];
  }
  return out;
}

inline Json situation_to_json(const SPGame& game, const Situation& sit) {
  return {{"sigma1", strategy_to_json(game, Player::kOne, sit.sigma1)},
          {"sigma2", strategy_to_json(game, Player::kTwo, sit.sigma2)}};
}

inline Names names_of(const std::vector<std::string>& vertex_names, const std::vector<std::string>& arc_names) {
  Names n;
  for (std::size_t i = 0; i < vertex_names.size(); ++i) n.vertex[vertex_names[i]] = static_cast<Vertex>(i);
  for (std::size_t i = 0; i < arc_names.size(); ++i) n.arc[arc_names[i]] = static_cast<ArcId>(i);
  return n;
}

// Accepts either a bare situation or a solver result holding one.
inline const Json& situation_part(const Json& j) {
  if (j.is_object() && j.contains("situation")) return j.at("situation");
  return j;
}

inline Situation situation_from_json(const SPGame& game, const Json& whole) {
  const Json& j = situation_part(whole);
  Names names = names_of(game.vertex_names, game.arc_names);
  Situation sit{default_strategy(game, Player::kOne), default_strategy(game, Player::kTwo)};
  for (Player p : {Player::kOne, Player::kTwo}) {
    const char* key = p == Player::kOne ? "sigma1" : "sigma2";
    const Json& m = field(j, key);
    if (!m.is_object()) throw bad_input(std::string(key) + " must map vertex ids to arc ids");
    Strategy& s = p == Player::kOne ? sit.sigma1 : sit.sigma2;
    std::vector<bool> given(game.num_vertices(), false);
    for (auto it = m.begin(); it != m.end(); ++it) {
      Vertex v = names.v(Json(it.key()), key);
      if (!game.owned_by(v, p)) throw bad_input(std::string(key) + " assigns a move at " + it.key() + ", which the player does not own");
      ArcId e = names.a(it.value(), key);
      if (game.graph.tail(e) != v) throw bad_input("arc " + game.arc_names[e] + " does not leave " + it.key());
      s[v] = e;
      given[v] = true;
    }
    for (Vertex v = 0; v < game.num_vertices(); ++v) {
      if (game.owned_by(v, p) && !given[v]) throw bad_input(std::string(key) + " has no move at " + game.vertex_names[v]);
    }
  }
  return sit;
}

inline Json interdiction_situation_to_json(const InterdictionGame& game, const InterdictionSituation& sit) {
  Json j{{"sigma1", Json::object()}, {"sigma2", Json::object()}};
  for (Vertex u = 0; u < game.num_vertices(); ++u) {
    if (u == game.terminal) continue;
    j["sigma1"][game.vertex_names[u]] = arcs_to_json(game.arc_names, sit.sigma1[u]);
    j["sigma2"][game.vertex_names[u]] = arcs_to_json(game.arc_names, sit.sigma2[u]);
  }
  return j;
}

inline InterdictionSituation interdiction_situation_from_json(const InterdictionGame& game, const Json& whole) {
  const Json& j = situation_part(whole);
  Names names = names_of(game.vertex_names, game.arc_names);
  const int n = game.num_vertices();
  InterdictionSituation sit{std::vector<std::vector<ArcId>>(n), std::vector<std::vector<ArcId>>(n)};
  for (int k = 0; k < 2; ++k) {
    const char* key = k == 0 ? "sigma1" : "sigma2";
    auto& sets = k == 0 ? sit.sigma1 : sit.sigma2;
    const Json& m = field(j, key);
    if (!m.is_object()) throw bad_input(std::string(key) + " must map vertex ids to arc lists");
    for (auto it = m.begin(); it != m.end(); ++it) {
      Vertex u = names.v(Json(it.key()), key);
      sets[u] = arc_list(names, it.value(), key);
      for (ArcId e : sets[u]) {
        if (game.graph.tail(e) != u) throw bad_input("arc " + game.arc_names[e] + " does not leave " + it.key());
      }
    }
  }
  return sit;
}

inline Json play_to_json(const SPGame& game, const Play& play) {
  Json j;
  j["kind"] = play.is_terminal() ? "terminal" : "lasso";
  if (play.is_terminal()) {
    j["path"] = arcs_to_json(game.arc_names, play.stem);
  } else {
    j["stem"] = arcs_to_json(game.arc_names, play.stem);
    j["cycle"] = arcs_to_json(game.arc_names, play.cycle);
  }
  j["cost1"] = cost_to_json(play.cost1);
  j["cost2"] = cost_to_json(play.cost2);
  return j;
}

inline Json vertex_costs_to_json(const std::vector<std::string>& names, const std::vector<Cost>& values) {
  Json out = Json::object();
  for (std::size_t v = 0; v < values.size(); ++v) out[names[v]] = cost_to_json(values[v]);
  return out;
}

inline Json arc_costs_to_json(const std::vector<std::string>& names,
                              const std::vector<std::optional<Rational>>& values) {
  Json out = Json::object();
  for (std::size_t e = 0; e < values.size(); ++e) {
    if (values[e]) out[names[e]] = cost_to_json(*values[e]);
  }
  return out;
}

inline Json vertices_to_json(const std::vector<std::string>& names, const std::vector<Vertex>& vs) {
  Json out = Json::array();
  for (Vertex v : vs) out.push_back(names[v]);
  return out;
}

inline Json result_to_json(const SPGame& game, const NEResult& res, bool certificate) {
  Json j;
  j["kind"] = res.kind == NEKind::kTerminal ? "terminal" : "cyclic";
  j["route"] = route_name(res.certificate.route);
  j["situation"] = situation_to_json(game, res.situation);
  j["play"] = play_to_json(game, res.play);
  if (certificate) {
    const Certificate& c = res.certificate;
    Json cert;
    if (!c.phi1.empty()) cert["phi1"] = vertex_costs_to_json(game.vertex_names, c.phi1);
    if (!c.phi2.empty()) cert["phi2"] = vertex_costs_to_json(game.vertex_names, c.phi2);
    if (!c.rbar1.empty()) cert["rbar1"] = arc_costs_to_json(game.arc_names, c.rbar1);
    if (!c.rbar2.empty()) cert["rbar2"] = arc_costs_to_json(game.arc_names, c.rbar2);
    cert["B"] = vertices_to_json(game.vertex_names, c.infinite);
    cert["B_other"] = vertices_to_json(game.vertex_names, c.infinite_other);
    cert["H"] = arcs_to_json(game.arc_names, c.h_arcs);
    cert["p"] = arcs_to_json(game.arc_names, c.path);
    j["certificate"] = std::move(cert);
  }
  return j;
}

inline Json potentials_to_json(const std::vector<std::string>& vertex_names,
                               const std::vector<std::string>& arc_names, const Potentials& pot) {
  Json j;
  j["phi"] = vertex_costs_to_json(vertex_names, pot.phi);
  Json blocked = Json::object();
  for (std::size_t v = 0; v < pot.blocked.size(); ++v) {
    std::vector<ArcId> sorted = pot.blocked[v];
    std::sort(sorted.begin(), sorted.end());
    blocked[vertex_names[v]] = arcs_to_json(arc_names, sorted);
  }
  j["blocked"] = std::move(blocked);
  Json witness = Json::object();
  for (std::size_t v = 0; v < pot.witness.size(); ++v) {
    if (pot.witness[v] != kNoArc) witness[vertex_names[v]] = arc_names[pot.witness[v]];
  }
  j["witness"] = std::move(witness);
  j["B"] = vertices_to_json(vertex_names, pot.infinite);
  return j;
}

inline Json interdiction_result_to_json(const InterdictionGame& game, const InterdictionNE& res,
                                        bool certificate) {
  Json j;
  j["kind"] = res.kind == NEKind::kTerminal ? "terminal" : "cyclic";
  j["route"] = route_name(res.route);
  j["situation"] = interdiction_situation_to_json(game, res.situation);
  if (res.path) j["path"] = arcs_to_json(game.arc_names, *res.path);
  j["cost1"] = cost_to_json(res.cost1);
  j["cost2"] = cost_to_json(res.cost2);
  if (certificate) {
    Json cert = potentials_to_json(game.vertex_names, game.arc_names, res.potentials);
    if (!res.rbar.empty()) cert["rbar"] = arc_costs_to_json(game.arc_names, res.rbar);
    j["certificate"] = std::move(cert);
  }
  return j;
}

// ---- DOT ---------------------------------------------------------------

// Chosen arcs of `sit` are bold, arcs of `play` red.
inline std::string to_dot(const SPGame& game, const Situation* sit = nullptr, const Play* play = nullptr) {
  std::ostringstream out;
  out << "digraph spgame {\n  rankdir=LR;\n";
  for (Vertex v = 0; v < game.num_vertices(); ++v) {
    const char* shape = game.owner[v] == Owner::kPlayer1 ? "circle"
                        : game.owner[v] == Owner::kPlayer2 ? "box"
                                                           : "doublecircle";
    out << "  \"" << game.vertex_names[v] << "\" [shape=" << shape
        << (v == game.start ? ", style=filled, fillcolor=lightgrey" : "") << "];\n";
  }
  std::vector<bool> chosen(game.num_arcs(), false);
  std::vector<bool> on_play(game.num_arcs(), false);
  if (sit) {
    for (Vertex v = 0; v < game.num_vertices(); ++v) {
      if (sit->sigma1[v] != kNoArc) chosen[sit->sigma1[v]] = true;
      if (sit->sigma2[v] != kNoArc) chosen[sit->sigma2[v]] = true;
    }
  }
  if (play) {
    for (ArcId e : play->stem) on_play[e] = true;
    for (ArcId e : play->cycle) on_play[e] = true;
  }
  for (ArcId e = 0; e < game.num_arcs(); ++e) {
    out << "  \"" << game.vertex_names[game.graph.tail(e)] << "\" -> \""
        << game.vertex_names[game.graph.head(e)] << "\" [label=\"" << game.arc_names[e] << " ("
        << game.r1[e].to_string() << "," << game.r2[e].to_string() << ")\"";
    if (chosen[e]) out << ", penwidth=2";
    if (on_play[e]) out << ", color=red";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace spgame::io

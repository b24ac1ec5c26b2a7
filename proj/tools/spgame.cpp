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

// spgame: command-line front end.
//
// Exit codes: 0 success, 1 invalid input, 2 enumeration cap exceeded,
// 3 internal invariant failure. Errors go to stderr as JSON.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spgame/bench.hpp"
#include "spgame/brute_force.hpp"
#include "spgame/game.hpp"
#include "spgame/interdiction.hpp"
#include "spgame/json_io.hpp"
#include "spgame/ne_solver.hpp"
#include "spgame/shortest_longest.hpp"

namespace {

using spgame::Error;
using spgame::ErrorCode;
using spgame::io::Json;

int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::kCapExceeded) return 2;
  if (spgame::is_internal(code)) return 3;
  return 1;
}

int report_error(std::string_view code, const std::string& message, int exit_code) {
  Json j{{"error", std::string(code)}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return exit_code;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return spgame::io::parse_text(buf.str());
}

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
    out << text;
  }
  void write(const Json& j) const { write(j.dump(2) + "\n"); }
};

spgame::NormalizeOptions normalize_options(bool bipartize) {
  spgame::NormalizeOptions opt;
  opt.bipartize = bipartize;
  return opt;
}

int cmd_solve(const std::string& input, bool bipartize, bool certificate, const std::string& dot,
              const Output& out) {
  const spgame::SPGame game = spgame::io::game_from_json(read_json(input));
  const spgame::Normalized norm = spgame::normalize_mapped(game, normalize_options(bipartize));
  spgame::NEResult res = spgame::solve(norm.game);
  // Report in the input's own ids; the play is the same walk.
  spgame::Situation sit = spgame::unmap_situation(game, norm, res.situation);
  Json j = spgame::io::result_to_json(norm.game, res, certificate);
  j["situation"] = spgame::io::situation_to_json(game, sit);
  if (certificate) j["certificate"]["normalized_game"] = spgame::io::game_to_json(norm.game);
  if (!dot.empty()) Output{dot}.write(spgame::io::to_dot(norm.game, &res.situation, &res.play));
  out.write(j);
  return 0;
}

int cmd_solve_interdiction(const std::string& input, bool certificate, const Output& out) {
  const spgame::InterdictionGame game = spgame::io::interdiction_from_json(read_json(input));
  out.write(spgame::io::interdiction_result_to_json(game, spgame::solve_interdiction(game), certificate));
  return 0;
}

int cmd_phi(const std::string& input, const std::string& metric, int player, const Output& out) {
  Json j = read_json(input);
  if (spgame::io::is_interdiction_json(j)) {
    const spgame::InterdictionGame game = spgame::io::interdiction_from_json(j);
    const auto& r = metric == "r1" ? game.r1 : game.r2;
    spgame::Potentials pot = spgame::modified_dijkstra(game.graph, game.terminal, r, *game.oracle);
    Json res = spgame::io::potentials_to_json(game.vertex_names, game.arc_names, pot);
    res["violations"] = spgame::potential_violations(game.graph, game.terminal, r, *game.oracle, pot);
    out.write(res);
    return 0;
  }
  const spgame::SPGame game = spgame::normalize(spgame::io::game_from_json(j));
  const spgame::Player minimizer = player == 2 ? spgame::Player::kTwo : spgame::Player::kOne;
  spgame::Potentials pot = spgame::sp_shortest_longest(game, minimizer);
  out.write(spgame::io::potentials_to_json(game.vertex_names, game.arc_names, pot));
  return 0;
}

int cmd_verify(const std::string& input, const std::string& situation_path, const Output& out) {
  Json j = read_json(input);
  Json sj = read_json(situation_path);
  Json res;
  if (spgame::io::is_interdiction_json(j)) {
    const spgame::InterdictionGame game = spgame::io::interdiction_from_json(j);
    auto sit = spgame::io::interdiction_situation_from_json(game, sj);
    auto check = spgame::verify_ne_interdiction(game, sit);
    auto cost = spgame::interdiction_cost(game, sit);
    res["is_ne"] = check.is_ne;
    res["cost1"] = spgame::io::cost_to_json(cost.cost1);
    res["cost2"] = spgame::io::cost_to_json(cost.cost2);
    if (check.witness) {
      const auto& w = *check.witness;
      Json sets = Json::object();
      for (spgame::Vertex u = 0; u < game.num_vertices(); ++u) {
        if (u != game.terminal) sets[game.vertex_names[u]] = spgame::io::arcs_to_json(game.arc_names, w.sets[u]);
      }
      res["witness"] = {{"player", w.player == spgame::Player::kOne ? 1 : 2},
                        {"strategy", sets},
                        {"cost_before", spgame::io::cost_to_json(w.before)},
                        {"cost_after", spgame::io::cost_to_json(w.after)}};
    }
  } else {
    const spgame::SPGame game = spgame::io::game_from_json(j);
    const spgame::Situation sit = spgame::io::situation_from_json(game, sj);
    const spgame::Normalized norm = spgame::normalize_mapped(game);
    const spgame::Situation mapped = spgame::map_situation(game, norm, sit);
    auto check = spgame::verify_ne(norm.game, mapped);
    auto second = spgame::verify_ne_best_response(norm.game, mapped);
    if (check.is_ne != second.is_ne) {
      throw Error(ErrorCode::kInternalInvariant, "enumeration and best-response checks disagree");
    }
    res["is_ne"] = check.is_ne;
    res["play"] = spgame::io::play_to_json(norm.game, spgame::play_of(norm.game, mapped));
    if (check.witness) {
      const auto& w = *check.witness;
      Json dev = spgame::io::strategy_to_json(norm.game, w.player, w.strategy);
      res["witness"] = {{"player", w.player == spgame::Player::kOne ? 1 : 2},
                        {"strategy", dev},
                        {"cost_before", spgame::io::cost_to_json(w.before)},
                        {"cost_after", spgame::io::cost_to_json(w.after)}};
    }
  }
  out.write(res);
  return 0;
}

int cmd_reduce(const std::string& input, const Output& out) {
  const spgame::InterdictionGame game = spgame::io::interdiction_from_json(read_json(input));
  spgame::Reduction red = spgame::reduce_to_sp(game, static_cast<int>(std::min<std::int64_t>(
                                                         spgame::enumeration_cap(spgame::kDefaultReductionCap),
                                                         1 << 24)));
  out.write(spgame::io::game_to_json(red.game));
  return 0;
}

spgame::GameFilter parse_filter(const std::string& name) {
  if (name == "none") return spgame::GameFilter::kNone;
  if (name == "has-path") return spgame::GameFilter::kHasTerminalPath;
  if (name == "both-force") return spgame::GameFilter::kBothForce;
  if (name == "neither-blocks") return spgame::GameFilter::kNeitherBlocks;
  throw Error(ErrorCode::kInvalidInput, "unknown filter " + name);
}

Json search_one(const spgame::SPGame& game) {
  spgame::SearchResult r = spgame::search_terminal_ne(game);
  Json j{{"found", r.found}, {"situations_checked", r.situations_checked}};
  if (r.reason) j["reason"] = std::string(spgame::error_code_name(*r.reason));
  if (r.situation) {
    j["verified"] = spgame::verify_ne(game, *r.situation).is_ne;
    j["situation"] = spgame::io::situation_to_json(game, *r.situation);
  }
  return j;
}

int cmd_search(const std::string& input, int count, std::uint64_t seed, const std::string& filter,
               int max_vertices, const std::string& quarantine, const Output& out) {
  if (!input.empty()) {
    out.write(search_one(spgame::normalize(spgame::io::game_from_json(read_json(input)))));
    return 0;
  }
  spgame::GeneratorOptions opt;
  opt.filter = parse_filter(filter);
  opt.max_vertices = max_vertices - 1;  // plus the terminal
  opt.min_vertices = std::min(opt.min_vertices, opt.max_vertices);
  int found = 0;
  int verified = 0;
  Json missing = Json::array();
  for (int i = 0; i < count; ++i) {
    const std::uint64_t instance_seed = seed + static_cast<std::uint64_t>(i);
    spgame::InstanceGenerator gen(instance_seed);
    spgame::SPGame game = gen.next_sp(opt);
    spgame::SearchResult r = spgame::search_terminal_ne(game);
    if (r.found) {
      ++found;
      if (spgame::verify_ne(game, *r.situation).is_ne) ++verified;
      continue;
    }
    Json record{{"seed", instance_seed}, {"filter", filter}, {"game", spgame::io::game_to_json(game)}};
    if (r.reason) record["reason"] = std::string(spgame::error_code_name(*r.reason));
    if (!quarantine.empty()) {
      std::filesystem::create_directories(quarantine);
      std::string path = quarantine + "/seed-" + std::to_string(instance_seed) + ".json";
      Output{path}.write(record);
      record["file"] = path;
    }
    missing.push_back(std::move(record));
    std::cerr << "no terminal equilibrium found for seed " << instance_seed << "\n";
  }
  out.write(Json{{"instances", count},
                 {"seed", seed},
                 {"filter", filter},
                 {"found", found},
                 {"verified", verified},
                 {"not_found", missing}});
  return 0;
}

int cmd_bench(const std::vector<int>& edges, const std::string& oracle, int repeats, std::uint64_t seed,
              const Output& out) {
  spgame::BenchOracle kind;
  if (oracle == "cardinality") {
    kind = spgame::BenchOracle::kCardinality;
  } else if (oracle == "sp") {
    kind = spgame::BenchOracle::kSp;
  } else {
    throw Error(ErrorCode::kInvalidInput, "oracle must be cardinality or sp");
  }
  std::vector<spgame::BenchInstance> insts;
  for (int m : edges) insts.push_back(spgame::make_bench_instance(m, kind, seed));
  std::vector<double> secs = spgame::time_modified_dijkstra(insts, repeats);
  Json runs = Json::array();
  for (std::size_t k = 0; k < insts.size(); ++k) {
    runs.push_back({{"edges", insts[k].graph.num_arcs()},
                    {"vertices", insts[k].graph.num_vertices()},
                    {"seconds", secs[k]}});
  }
  out.write(Json{{"oracle", oracle}, {"repeats", repeats}, {"runs", runs}});
  return 0;
}

int cmd_normalize(const std::string& input, bool bipartize, bool keep_terminals, bool keep_unreachable,
                  const Output& out) {
  spgame::NormalizeOptions opt;
  opt.bipartize = bipartize;
  opt.merge_terminals = !keep_terminals;
  opt.prune_unreachable = !keep_unreachable;
  out.write(spgame::io::game_to_json(spgame::normalize(spgame::io::game_from_json(read_json(input)), opt)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash equilibria of two-person shortest-path and interdiction games"};
  app.require_subcommand(1);
  Output out;
  std::string input;
  bool bipartize = false;
  bool certificate = false;
  std::string dot;

  auto* solve = app.add_subcommand("solve", "Equilibrium of an SP game");
  solve->add_option("game", input, "game JSON")->required();
  solve->add_flag("--bipartize", bipartize, "subdivide arcs so that players alternate");
  solve->add_flag("--certificate", certificate, "include potentials, reweighted costs and the path");
  solve->add_option("--dot", dot, "also write a DOT rendering of the solved game");
  solve->add_option("-o,--output", out.path, "output file (default stdout)");

  auto* solve_i = app.add_subcommand("solve-interdiction", "Equilibrium of an interdiction game");
  solve_i->add_option("game", input, "interdiction game JSON")->required();
  solve_i->add_flag("--certificate", certificate, "include the potentials used");
  solve_i->add_option("-o,--output", out.path, "output file (default stdout)");

  std::string metric = "r2";
  int player = 1;
  auto* phi = app.add_subcommand("phi", "Shortest-longest values");
  phi->add_option("game", input, "game JSON")->required();
  phi->add_option("--metric", metric, "cost for interdiction games")->check(CLI::IsMember({"r1", "r2"}));
  phi->add_option("--player", player, "minimizing player for SP games")->check(CLI::Range(1, 2));
  phi->add_option("-o,--output", out.path, "output file (default stdout)");

  std::string situation;
  auto* verify = app.add_subcommand("verify", "Check a situation for profitable deviations");
  verify->add_option("game", input, "game JSON")->required();
  verify->add_option("-s,--situation", situation, "situation or solver output JSON")->required();
  verify->add_option("-o,--output", out.path, "output file (default stdout)");

  auto* reduce = app.add_subcommand("reduce", "Equivalent SP game of an interdiction game");
  reduce->add_option("game", input, "interdiction game JSON")->required();
  reduce->add_option("-o,--output", out.path, "output file (default stdout)");

  int count = 100;
  std::uint64_t seed = 1;
  std::string filter = "both-force";
  int max_vertices = 7;
  std::string quarantine;
  auto* search = app.add_subcommand("search", "Look for terminal equilibria by enumeration");
  search->add_option("game", input, "single game JSON (otherwise random instances)");
  search->add_option("--count", count, "number of random instances")->check(CLI::PositiveNumber);
  search->add_option("--seed", seed, "seed of the first instance");
  search->add_option("--filter", filter, "instance filter")
      ->check(CLI::IsMember({"none", "has-path", "both-force", "neither-blocks"}));
  search->add_option("--max-vertices", max_vertices, "vertex bound including t")->check(CLI::Range(2, 12));
  search->add_option("--quarantine", quarantine, "directory for instances without a terminal equilibrium");
  search->add_option("-o,--output", out.path, "output file (default stdout)");

  std::vector<int> edges{25000, 50000, 100000};
  std::string oracle = "cardinality";
  int repeats = 10;
  auto* bench = app.add_subcommand("bench", "Time the shortest-longest engine");
  bench->add_option("--edges", edges, "edge counts")->check(CLI::Range(16, 50'000'000));
  bench->add_option("--oracle", oracle, "cardinality or sp")->check(CLI::IsMember({"cardinality", "sp"}));
  bench->add_option("--repeats", repeats, "interleaved runs per size; the minimum is reported")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "instance seed");
  bench->add_option("-o,--output", out.path, "output file (default stdout)");

  bool keep_terminals = false;
  bool keep_unreachable = false;
  auto* normalize = app.add_subcommand("normalize", "Merge terminals, prune, optionally bipartize");
  normalize->add_option("game", input, "game JSON")->required();
  normalize->add_flag("--bipartize", bipartize, "subdivide arcs so that players alternate");
  normalize->add_flag("--keep-terminals", keep_terminals, "do not merge terminals");
  normalize->add_flag("--keep-unreachable", keep_unreachable, "do not prune");
  normalize->add_option("-o,--output", out.path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("InvalidArguments", e.what(), 1);
  }

  try {
    if (*solve) return cmd_solve(input, bipartize, certificate, dot, out);
    if (*solve_i) return cmd_solve_interdiction(input, certificate, out);
    if (*phi) return cmd_phi(input, metric, player, out);
    if (*verify) return cmd_verify(input, situation, out);
    if (*reduce) return cmd_reduce(input, out);
    if (*search) return cmd_search(input, count, seed, filter, max_vertices, quarantine, out);
    if (*bench) return cmd_bench(edges, oracle, repeats, seed, out);
    if (*normalize) return cmd_normalize(input, bipartize, keep_terminals, keep_unreachable, out);
  } catch (const Error& e) {
    return report_error(spgame::error_code_name(e.code()), e.what(), exit_code_for(e.code()));
  } catch (const std::exception& e) {
    return report_error("InternalInvariant", e.what(), 3);
  }
  return 0;
}

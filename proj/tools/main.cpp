#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pscfr/cfr.hpp"
#include "pscfr/evaluation.hpp"
#include "pscfr/games.hpp"
#include "pscfr/public_tree.hpp"
#include "pscfr/sbg.hpp"
#include "pscfr/strategy_io.hpp"
#include "svg_plot.hpp"

namespace {

using namespace pscfr;

UpdaterKind parse_algo(const std::string& name) {
  if (name == "vanilla") return UpdaterKind::history_tree;
  if (name == "ps") return UpdaterKind::public_tree;
  if (name == "ps-domain") return UpdaterKind::public_tree_domain;
  throw ConfigError("unknown algorithm '" + name + "' (expected vanilla, ps or ps-domain)");
}

double seconds(std::uint64_t nanoseconds) { return static_cast<double>(nanoseconds) / 1e9; }

int cmd_info(const std::string& spec) {
  GamePtr game = make_game(spec);
  const GameCounts counts = enumerate_counts(*game);
  std::printf("game: %s\n", game->name().c_str());
  std::printf("players: %d\n", counts.num_players);
  std::printf("histories: %lld\n", counts.histories);
  std::printf("terminal_histories: %lld\n", counts.terminal_histories);
  for (int i = 0; i < counts.num_players; ++i) {
    std::printf("infostates_p%d: %lld (decision: %lld)\n", i + 1, counts.infostates[i],
                counts.decision_infostates[i]);
  }
  std::printf("infostates_total: %lld\n", counts.infostates_total());
  std::printf("decision_infostates_total: %lld\n", counts.decision_infostates_total());
  std::printf("public_states: %lld (terminal: %lld)\n", counts.public_states,
              counts.terminal_public_states);
  std::printf("max_private_infostates_per_public: %lld\n", counts.max_privates_per_public);
  const SbgReport report = check_sbg(*game);
  std::printf("sbg: %s\n", report.is_sbg() ? "yes" : "no");
  std::printf("%s\n", report.summary().c_str());
  return 0;
}

int cmd_check_sbg(const std::string& spec) {
  GamePtr game = make_game(spec);
  const SbgReport report = check_sbg(*game);
  std::printf("game: %s\n", game->name().c_str());
  std::printf("sbg: %s\n", report.is_sbg() ? "yes" : "no");
  std::printf("%s\n", report.summary().c_str());
  return 0;
}

int cmd_solve(const std::string& spec, const std::string& algo, long long iters,
              long long cadence, const std::string& avg, const std::string& out_strategy,
              const std::string& out_csv, bool deterministic) {
  GamePtr game = make_game(spec);
  SolveOptions options;
  options.iterations = iters;
  options.explo_cadence = cadence;
  options.average = avg == "uniform" ? AverageMode::uniform_behavioral
                                     : AverageMode::reach_weighted;
  const SolveResult result = cfr_solve(game, parse_algo(algo), options);

  write_strategy_file(result.average, out_strategy);
  result.record.write_csv_file(out_csv, deterministic);

  const RunRecord::Row& last = result.record.rows.back();
  std::printf("game: %s\nalgo: %s\niterations: %lld\n", game->name().c_str(), algo.c_str(),
              iters);
  std::printf("final_exploitability: %.12g\n", last.exploitability.value());
  std::printf("p1_value: %.12g\n", result.final_values[0]);
  std::printf("value_updates_per_iter: %lld\n", last.value_updates_cum / iters);
  std::printf("wall_s: %.3f\n", last.wall_ms / 1e3);
  std::printf("strategy: %s\ncsv: %s\n", out_strategy.c_str(), out_csv.c_str());
  return 0;
}

int cmd_compare(const std::string& spec, long long iters, long long cadence) {
  GamePtr game = make_game(spec);
  auto vanilla = make_solver(game, UpdaterKind::history_tree);
  auto ps = make_solver(game, UpdaterKind::public_tree);
  if (cadence <= 0) cadence = (iters + 63) / 64;

  double max_explo_gap = 0.0;
  for (long long t = 1; t <= iters; ++t) {
    vanilla->run_iteration();
    ps->run_iteration();
    if (t % cadence == 0 || t == iters) {
      const double ev = exploitability(*game, vanilla->average_policy());
      const double ep = exploitability(*game, ps->average_policy());
      max_explo_gap = std::max(max_explo_gap, std::abs(ev - ep));
    }
  }
  const double distance = strategy_distance(vanilla->average_policy(), ps->average_policy());
  std::printf("game: %s\niterations: %lld\n", game->name().c_str(), iters);
  std::printf("max_strategy_distance: %.3e\n", distance);
  std::printf("max_exploitability_gap: %.3e\n", max_explo_gap);
  const bool ok = distance <= 1e-9;
  std::printf("equivalent: %s\n", ok ? "yes" : "NO");
  return ok ? 0 : 2;
}

int cmd_bench(const std::string& spec, const std::string& algos_csv, long long iters,
              long long cadence, const std::string& out_csv, const std::string& out_svg,
              bool deterministic) {
  GamePtr game = make_game(spec);
  std::vector<std::string> algos = split(algos_csv, ',');
  if (algos.empty()) throw ConfigError("no algorithms given");
  for (const std::string& a : algos) parse_algo(a);  // validate before running
  if (cadence <= 0) cadence = (iters + 63) / 64;

  RunRecord record;
  std::vector<plot::Series> series;
  const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
  std::printf("game: %s, iterations: %lld\n", game->name().c_str(), iters);
  std::printf("%-10s %12s %12s %14s %16s\n", "algo", "setup_s", "total_s", "per_iter_ms",
              "table_entries");

  for (std::size_t idx = 0; idx < algos.size(); ++idx) {
    const std::string& algo = algos[idx];
    const auto setup_start = std::chrono::steady_clock::now();
    auto solver = make_solver(game, parse_algo(algo));
    const double setup_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                         setup_start)
                               .count();
    plot::Series s{algo, colors[idx % 4], {}};
    for (long long t = 1; t <= iters; ++t) {
      solver->run_iteration();
      RunRecord::Row row;
      row.iter = t;
      row.algo = algo;
      row.value_updates_cum = static_cast<long long>(solver->counters().value_updates());
      row.wall_ms = static_cast<double>(solver->counters().wall_nanoseconds) / 1e6;
      if (t % cadence == 0 || t == iters) {
        row.exploitability = exploitability(*game, solver->average_policy());
        s.points.emplace_back(static_cast<double>(row.value_updates_cum), *row.exploitability);
      }
      record.rows.push_back(std::move(row));
    }
    const double total_s = seconds(solver->counters().wall_nanoseconds);
    std::printf("%-10s %12.3f %12.3f %14.4f %16lld\n", algo.c_str(), setup_s, total_s,
                total_s * 1e3 / static_cast<double>(iters), solver->table_entries());
    series.push_back(std::move(s));
  }

  record.write_csv_file(out_csv, deterministic);
  plot::PlotOptions options;
  options.title = "exploitability vs value updates (" + game->name() + ")";
  options.x_label = "cumulative value updates";
  options.y_label = "exploitability";
  plot::write_svg_file(out_svg, series, options);
  std::printf("csv: %s\nsvg: %s\n", out_csv.c_str(), out_svg.c_str());
  return 0;
}

int cmd_transform(const std::string& which, const std::string& out_path, long long iters) {
  MatrixGame matrix;
  if (which == "mp") {
    matrix = matching_pennies_matrix();
  } else if (which == "rps") {
    matrix = rps_matrix();
  } else {
    throw ConfigError("transform supports --game mp or --game rps");
  }
  GamePtr game = sb_transform(matrix);

  const SbgReport report = check_sbg(*game);
  std::printf("game: %s\n", game->name().c_str());
  std::printf("%s\n", report.summary().c_str());
  if (!report.is_sbg()) {
    std::fprintf(stderr, "error: transformed game failed the sequential-Bayesian check\n");
    return 1;
  }

  nlohmann::json description;
  description["name"] = game->name();
  description["kind"] = "sb_form";
  description["row_actions"] = matrix.row_actions;
  description["col_actions"] = matrix.col_actions;
  description["payoff"] = matrix.payoff;
  description["code_books"] = sb_code_book_count(matrix);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + out_path + "' for writing");
  out << description.dump(2) << "\n";

  SolveOptions options;
  options.iterations = iters;
  const SolveResult result = cfr_solve(game, UpdaterKind::public_tree, options);
  const double value = result.final_values[0];
  std::printf("cfr_value_p1: %.6g (matrix game value 0)\n", value);
  std::printf("value_parity: %s\n", std::abs(value) <= 1e-3 ? "pass" : "FAIL");
  std::printf("description: %s\n", out_path.c_str());
  return std::abs(value) <= 1e-3 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FOSG benchmark CLI: history-tree and public-tree CFR"};
  app.require_subcommand(1);

  std::string spec;
  std::string algo = "vanilla";
  std::string algos = "vanilla,ps";
  std::string avg = "reach";
  std::string out_strategy = "strategy.tsv";
  std::string out_csv = "run.csv";
  std::string out_svg = "bench.svg";
  std::string transform_game;
  std::string transform_out = "sb_form.json";
  long long iters = 1000;
  long long cadence = 0;
  long long seed = 0;
  bool deterministic = false;

  CLI::App* info = app.add_subcommand("info", "Print game sizes and the SBG verdict");
  info->add_option("--game", spec, "game spec")->required();

  CLI::App* check = app.add_subcommand("check-sbg", "Check the sequential-Bayesian conditions");
  check->add_option("--game", spec, "game spec")->required();

  CLI::App* solve = app.add_subcommand("solve", "Run one CFR solver and write outputs");
  solve->add_option("--game", spec, "game spec")->required();
  solve->add_option("--algo", algo, "vanilla | ps | ps-domain");
  solve->add_option("--iters", iters, "iterations")->check(CLI::PositiveNumber);
  solve->add_option("--cadence", cadence, "exploitability sampling cadence (0 = iters/64)");
  solve->add_option("--avg", avg, "reach | uniform average");
  solve->add_option("--out-strategy", out_strategy, "strategy file path");
  solve->add_option("--out-csv", out_csv, "run record CSV path");
  solve->add_option("--seed", seed, "reserved for randomized fixtures; solvers are deterministic");
  solve->add_flag("--deterministic", deterministic, "zero wall-clock columns in the CSV");

  CLI::App* compare = app.add_subcommand("compare", "Run vanilla and ps, report their distance");
  compare->add_option("--game", spec, "game spec")->required();
  compare->add_option("--iters", iters, "iterations")->check(CLI::PositiveNumber);
  compare->add_option("--cadence", cadence, "exploitability sampling cadence");

  CLI::App* bench = app.add_subcommand("bench", "Time several algorithms and plot convergence");
  bench->add_option("--game", spec, "game spec")->required();
  bench->add_option("--algos", algos, "comma-separated algorithm list");
  bench->add_option("--iters", iters, "iterations")->check(CLI::PositiveNumber);
  bench->add_option("--cadence", cadence, "exploitability sampling cadence (0 = iters/64)");
  bench->add_option("--out-csv", out_csv, "run record CSV path");
  bench->add_option("--out-svg", out_svg, "convergence plot path");
  bench->add_option("--seed", seed, "reserved for randomized fixtures; solvers are deterministic");
  bench->add_flag("--deterministic", deterministic, "zero wall-clock columns in the CSV");

  CLI::App* transform = app.add_subcommand("transform", "Write the code-book form of a matrix game");
  transform->add_option("--game", transform_game, "mp | rps")->required();
  transform->add_option("--out", transform_out, "output path for the game description");
  transform->add_option("--iters", iters, "CFR iterations for the value parity check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (info->parsed()) return cmd_info(spec);
    if (check->parsed()) return cmd_check_sbg(spec);
    if (solve->parsed()) {
      return cmd_solve(spec, algo, iters, cadence, avg, out_strategy, out_csv, deterministic);
    }
    if (compare->parsed()) return cmd_compare(spec, iters, cadence);
    if (bench->parsed()) {
      return cmd_bench(spec, algos, iters, cadence, out_csv, out_svg, deterministic);
    }
    if (transform->parsed()) return cmd_transform(transform_game, transform_out, iters);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

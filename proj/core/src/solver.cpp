#include "pscfr/cfr.hpp"

#include "pscfr/evaluation.hpp"
#include "solvers_impl.hpp"

namespace pscfr {

std::vector<double> regret_matching(std::span<const double> cumulative_regrets) {
  PSCFR_CHECK_MSG(!cumulative_regrets.empty(), "regret_matching on an empty vector");
  std::vector<double> probs(cumulative_regrets.size());
  double positive_sum = 0.0;
  for (std::size_t a = 0; a < cumulative_regrets.size(); ++a) {
    probs[a] = cumulative_regrets[a] > kRegretMatchingZero ? cumulative_regrets[a] : 0.0;
    positive_sum += probs[a];
  }
  if (positive_sum <= 0.0) {
    std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(probs.size()));
    return probs;
  }
  for (double& p : probs) p /= positive_sum;
  return probs;
}

Counters Counters::delta_from(const Counters& earlier) const {
  Counters d;
  d.histories_touched = histories_touched - earlier.histories_touched;
  d.infostate_value_updates = infostate_value_updates - earlier.infostate_value_updates;
  d.infostate_action_updates = infostate_action_updates - earlier.infostate_action_updates;
  d.terminal_eval_ops = terminal_eval_ops - earlier.terminal_eval_ops;
  d.wall_nanoseconds = wall_nanoseconds - earlier.wall_nanoseconds;
  return d;
}

std::string updater_name(UpdaterKind kind) {
  switch (kind) {
    case UpdaterKind::history_tree: return "vanilla";
    case UpdaterKind::public_tree: return "ps";
    case UpdaterKind::public_tree_domain: return "ps-domain";
  }
  return "?";
}

std::unique_ptr<CfrSolver> make_solver(GamePtr game, UpdaterKind kind, AverageMode average) {
  PSCFR_CHECK(game != nullptr);
  switch (kind) {
    case UpdaterKind::history_tree:
      return detail::make_vanilla_solver(std::move(game), average);
    case UpdaterKind::public_tree:
      return detail::make_ps_solver(std::move(game), average, /*poker_terminal=*/false);
    case UpdaterKind::public_tree_domain:
      return detail::make_ps_solver(std::move(game), average, /*poker_terminal=*/true);
  }
  throw ConfigError("unknown updater kind");
}

SolveResult cfr_solve(GamePtr game, UpdaterKind kind, const SolveOptions& options) {
  PSCFR_CHECK_MSG(options.iterations >= 1, "iterations must be >= 1");
  const long long cadence = options.explo_cadence > 0
                                ? options.explo_cadence
                                : (options.iterations + 63) / 64;
  const std::string tag = options.algo_tag.empty() ? updater_name(kind) : options.algo_tag;

  std::unique_ptr<CfrSolver> solver = make_solver(game, kind, options.average);
  SolveResult result;
  for (long long t = 1; t <= options.iterations; ++t) {
    solver->run_iteration();
    RunRecord::Row row;
    row.iter = t;
    row.algo = tag;
    row.value_updates_cum = static_cast<long long>(solver->counters().value_updates());
    row.wall_ms = static_cast<double>(solver->counters().wall_nanoseconds) / 1e6;
    if (t % cadence == 0 || t == options.iterations) {
      row.exploitability = exploitability(*game, solver->average_policy());
    }
    result.record.rows.push_back(std::move(row));
  }
  result.average = solver->average_policy();
  result.final_values = expected_values(*game, result.average);
  return result;
}

}  // namespace pscfr

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pscfr/game.hpp"
#include "pscfr/public_tree.hpp"
#include "pscfr/run_record.hpp"

namespace pscfr {

// Behavioural strategy: infostate key -> distribution over that infostate's
// legal actions. Probabilities align with `actions`.
struct PolicyEntry {
  std::vector<std::string> actions;
  std::vector<double> probs;
};
using Policy = std::map<std::string, PolicyEntry>;

// Regrets below this threshold count as zero in regret matching. The two
// regret updaters accumulate identical sums in different orders; the
// threshold keeps an exact-zero regret from landing on opposite sides of the
// support boundary in the two implementations.
inline constexpr double kRegretMatchingZero = 1e-12;

// Positive parts normalized; uniform when no regret is positive.
std::vector<double> regret_matching(std::span<const double> cumulative_regrets);

// Work counters, all cumulative across iterations.
//  - histories_touched: histories visited by the history-tree regret update.
//  - infostate_value_updates: writes/accumulations of infostate values
//    (history-level values count per (history, player) for the history updater).
//  - infostate_action_updates: accumulations of infostate-action values.
//  - terminal_eval_ops: terminal-evaluation work; one op per matrix cell for
//    the generic evaluator, one per hand-slot pass for the poker evaluator.
struct Counters {
  std::uint64_t histories_touched = 0;
  std::uint64_t infostate_value_updates = 0;
  std::uint64_t infostate_action_updates = 0;
  std::uint64_t terminal_eval_ops = 0;
  std::uint64_t wall_nanoseconds = 0;

  std::uint64_t value_updates() const {
    return infostate_value_updates + infostate_action_updates;
  }
  Counters delta_from(const Counters& earlier) const;
};

enum class AverageMode {
  reach_weighted,      // standard CFR average, weighted by own reach
  uniform_behavioral,  // the literal uniform mean of behavioural policies
};

enum class UpdaterKind {
  history_tree,        // Vanilla CFR
  public_tree,         // PS-CFR with the generic terminal evaluation
  public_tree_domain,  // PS-CFR with the poker rank-sweep terminal evaluation
};

std::string updater_name(UpdaterKind kind);

// One CFR solver instance over an immutable game. run_iteration() performs a
// full regret update with the current profile, regret-matches the next
// profile, and folds the new profile into the average. Instances own all
// mutable state; concurrent instances over one game are safe.
class CfrSolver {
 public:
  virtual ~CfrSolver() = default;

  virtual void run_iteration() = 0;
  virtual long long iterations_done() const = 0;
  virtual Policy current_policy() const = 0;
  virtual Policy average_policy() const = 0;
  virtual const Counters& counters() const = 0;
  // Root counterfactual values of the profile used by the last iteration;
  // equal to the players' expected values under that profile.
  virtual std::vector<double> root_values() const = 0;
  // Cumulative regrets keyed like Policy; for equivalence checks and tests.
  virtual std::map<std::string, PolicyEntry> regret_table() const = 0;
  // Stored table entries (doubles); a portable memory proxy.
  virtual long long table_entries() const = 0;
};

std::unique_ptr<CfrSolver> make_solver(GamePtr game, UpdaterKind kind,
                                       AverageMode average = AverageMode::reach_weighted);

// --- terminal evaluation -----------------------------------------------

// Counterfactual values of one player at a terminal public state:
// V_i = ChWU_i * opponent_reach. Oracle form used by tests and the fused
// evaluator below; `opponent_reach` indexes the matrix columns.
std::vector<double> chwu_matvec(const ChwuMatrix& matrix, std::span<const double> opponent_reach);

// Fused two-player evaluation over one cell sweep. Adds rows*cols to
// `terminal_eval_ops` and rows+cols to `infostate_value_updates`.
void terminal_eval_generic(const PublicState& node, std::span<const double> reach1,
                           std::span<const double> reach2, std::span<double> values1,
                           std::span<double> values2, Counters& counters);

// Precomputed rank-sweep data for one terminal public state of a river game.
struct PokerTerminalInfo {
  enum class Kind { fold, showdown };
  Kind kind = Kind::showdown;
  int folder = -1;
  int hand_size = 1;          // 2 activates the per-card blocker corrections
  double stake = 0.0;         // folder's contribution, or the showdown stake
  double chance_const = 0.0;  // uniform deal probability
  // Per player: private hands in tree order, their cards, rank group ids
  // (ascending strength, shared across players), and per-card ids.
  struct Hand {
    std::vector<int> cards;  // dense card ids local to this terminal
    int rank_group = 0;
    int opp_same = -1;  // opponent's index of the identical hand, if any
  };
  std::vector<std::vector<Hand>> hands;  // [player][priv]
  std::vector<std::vector<int>> by_rank; // [player][sorted position] -> priv index
  int num_rank_groups = 0;
  int num_cards = 0;  // distinct card ids referenced, for scratch sizing
};

// Builds the sweep data from a terminal public state's private hand tokens
// and its public betting line. Throws ConfigError when `game` is not a river
// game or the node is not terminal.
PokerTerminalInfo classify_poker_terminal(const Game& game, const PublicState& node);

// O(|S'_1| + |S'_2|) evaluation equal to terminal_eval_generic within 1e-10:
// fold terminals use total-minus-conflicting opponent reach; showdowns sweep
// the shared rank order accumulating weaker-minus-stronger mass with per-card
// corrections for blockers and zero contribution for ties. Adds hand-slot
// touches to `terminal_eval_ops` and rows+cols to `infostate_value_updates`.
void terminal_eval_poker_linear(const PokerTerminalInfo& info, std::span<const double> reach1,
                                std::span<const double> reach2, std::span<double> values1,
                                std::span<double> values2, Counters& counters);

// --- driver --------------------------------------------------------------

struct SolveOptions {
  long long iterations = 1;
  // Exploitability sampling cadence; 0 picks ceil(iterations / 64).
  long long explo_cadence = 0;
  AverageMode average = AverageMode::reach_weighted;
  std::string algo_tag;  // defaults to updater_name(kind)
};

struct SolveResult {
  Policy average;
  RunRecord record;
  std::vector<double> final_values;  // expected values of the average profile
};

SolveResult cfr_solve(GamePtr game, UpdaterKind kind, const SolveOptions& options);

}  // namespace pscfr

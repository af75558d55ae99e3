#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "pscfr/history.hpp"
#include "solvers_impl.hpp"

namespace pscfr::detail {

namespace {

// History-tree CFR. Histories are regenerated every iteration; the only state
// kept between iterations is the per-infostate table below.
class VanillaCfr final : public CfrSolver {
 public:
  VanillaCfr(GamePtr game, AverageMode average)
      : game_(std::move(game)), average_(average), root_(History::root(game_)) {
    num_players_ = game_->num_players();
  }

  void run_iteration() override {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> reach(num_players_, 1.0);
    root_values_ = update(root_, reach);
    for (auto& [key, entry] : table_) {
      entry.policy = regret_matching(entry.regret);
    }
    ++iteration_;
    accumulate_average(root_, reach);
    counters_.wall_nanoseconds += std::chrono::duration_cast<std::chrono::nanoseconds>(
                                      std::chrono::steady_clock::now() - start)
                                      .count();
  }

  long long iterations_done() const override { return iteration_; }

  Policy current_policy() const override {
    Policy out;
    for (const auto& [key, entry] : table_) {
      out.emplace(key, PolicyEntry{entry.tokens, entry.policy});
    }
    return out;
  }

  Policy average_policy() const override {
    Policy out;
    for (const auto& [key, entry] : table_) {
      out.emplace(key, PolicyEntry{entry.tokens, normalize_or_uniform(entry.average)});
    }
    return out;
  }

  const Counters& counters() const override { return counters_; }

  std::vector<double> root_values() const override { return root_values_; }

  std::map<std::string, PolicyEntry> regret_table() const override {
    std::map<std::string, PolicyEntry> out;
    for (const auto& [key, entry] : table_) {
      out.emplace(key, PolicyEntry{entry.tokens, entry.regret});
    }
    return out;
  }

  long long table_entries() const override {
    long long total = 0;
    for (const auto& [key, entry] : table_) {
      total += 3 * static_cast<long long>(entry.regret.size());
    }
    return total;
  }

 private:
  struct Entry {
    std::vector<std::string> tokens;
    std::vector<double> regret;
    std::vector<double> policy;
    std::vector<double> average;
    long long average_stamp = -1;  // last iteration folded into the average
  };

  static std::vector<double> normalize_or_uniform(const std::vector<double>& weights) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    std::vector<double> out(weights.size());
    if (sum <= 0.0) {
      std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(weights.size()));
    } else {
      for (std::size_t a = 0; a < weights.size(); ++a) out[a] = weights[a] / sum;
    }
    return out;
  }

  Entry& entry_for(const History& h, int player) {
    const std::string key = h.infostate_key(player);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    Entry entry;
    const std::vector<Action> actions = h.legal_actions(player);
    for (Action a : actions) entry.tokens.push_back(h.action_token(player, a));
    entry.regret.assign(actions.size(), 0.0);
    entry.policy.assign(actions.size(), 1.0 / static_cast<double>(actions.size()));
    entry.average.assign(actions.size(), 0.0);
    return table_.emplace(key, std::move(entry)).first->second;
  }

  // One regret update below h. `reach` holds the players' own-policy reach
  // probabilities; chance reach lives in the histories. Returns the players'
  // counterfactual values of h.
  std::vector<double> update(const History& h, const std::vector<double>& reach) {
    ++counters_.histories_touched;
    if (h.is_terminal()) {
      counters_.infostate_value_updates += num_players_;
      std::vector<double> values(num_players_);
      for (int i = 0; i < num_players_; ++i) {
        double opponents = h.chance_reach();
        for (int j = 0; j < num_players_; ++j) {
          if (j != i) opponents *= reach[j];
        }
        values[i] = opponents * h.utilities()[i];
      }
      return values;
    }

    const std::vector<int> actors = h.active_players();
    std::vector<Entry*> entries(actors.size());
    std::vector<std::vector<Action>> legal(actors.size());
    std::vector<std::vector<double>> q(actors.size());
    for (std::size_t k = 0; k < actors.size(); ++k) {
      entries[k] = &entry_for(h, actors[k]);
      legal[k] = h.legal_actions(actors[k]);
      q[k].assign(legal[k].size(), 0.0);
    }
    std::vector<double> pass_through(num_players_, 0.0);
    std::vector<char> is_actor(num_players_, 0);
    std::vector<int> actor_slot(num_players_, -1);
    for (std::size_t k = 0; k < actors.size(); ++k) {
      is_actor[actors[k]] = 1;
      actor_slot[actors[k]] = static_cast<int>(k);
    }

    std::vector<double> child_reach(num_players_);
    for (const HistorySuccessor& succ : h.successors()) {
      child_reach = reach;
      std::vector<int> action_index(actors.size());
      for (std::size_t k = 0; k < actors.size(); ++k) {
        const auto pos = std::find(legal[k].begin(), legal[k].end(), succ.joint[k]);
        action_index[k] = static_cast<int>(pos - legal[k].begin());
        child_reach[actors[k]] *= entries[k]->policy[action_index[k]];
      }
      const std::vector<double> child_values = update(succ.history, child_reach);
      for (int i = 0; i < num_players_; ++i) {
        if (is_actor[i]) {
          q[actor_slot[i]][action_index[actor_slot[i]]] += child_values[i];
        } else {
          pass_through[i] += child_values[i];
        }
        ++counters_.infostate_action_updates;
      }
    }

    std::vector<double> values(num_players_);
    for (int i = 0; i < num_players_; ++i) {
      if (is_actor[i]) {
        const int k = actor_slot[i];
        double v = 0.0;
        for (std::size_t a = 0; a < q[k].size(); ++a) v += entries[k]->policy[a] * q[k][a];
        values[i] = v;
      } else {
        values[i] = pass_through[i];
      }
    }
    counters_.infostate_value_updates += num_players_;

    for (std::size_t k = 0; k < actors.size(); ++k) {
      for (std::size_t a = 0; a < q[k].size(); ++a) {
        entries[k]->regret[a] += q[k][a] - values[actors[k]];
      }
    }
    return values;
  }

  // Folds the freshly regret-matched profile into the average, weighting each
  // infostate by its own reach and touching it once per iteration.
  void accumulate_average(const History& h, const std::vector<double>& reach) {
    if (h.is_terminal()) return;
    const std::vector<int> actors = h.active_players();
    std::vector<Entry*> entries(actors.size());
    std::vector<std::vector<Action>> legal(actors.size());
    for (std::size_t k = 0; k < actors.size(); ++k) {
      auto it = table_.find(h.infostate_key(actors[k]));
      PSCFR_CHECK(it != table_.end());
      entries[k] = &it->second;
      legal[k] = h.legal_actions(actors[k]);
      Entry& entry = *entries[k];
      if (entry.average_stamp != iteration_) {
        entry.average_stamp = iteration_;
        const double weight = average_ == AverageMode::reach_weighted ? reach[actors[k]] : 1.0;
        for (std::size_t a = 0; a < entry.policy.size(); ++a) {
          entry.average[a] += weight * entry.policy[a];
        }
      }
    }
    std::vector<double> child_reach(num_players_);
    for (const HistorySuccessor& succ : h.successors()) {
      child_reach = reach;
      for (std::size_t k = 0; k < actors.size(); ++k) {
        const auto pos = std::find(legal[k].begin(), legal[k].end(), succ.joint[k]);
        child_reach[actors[k]] *= entries[k]->policy[pos - legal[k].begin()];
      }
      accumulate_average(succ.history, child_reach);
    }
  }

  GamePtr game_;
  AverageMode average_;
  History root_;
  int num_players_ = 0;
  long long iteration_ = 0;
  std::unordered_map<std::string, Entry> table_;
  Counters counters_;
  std::vector<double> root_values_;
};

}  // namespace

std::unique_ptr<CfrSolver> make_vanilla_solver(GamePtr game, AverageMode average) {
  return std::make_unique<VanillaCfr>(std::move(game), average);
}

}  // namespace pscfr::detail

#include <algorithm>
#include <chrono>

#include "solvers_impl.hpp"

namespace pscfr {

std::vector<double> chwu_matvec(const ChwuMatrix& matrix, std::span<const double> opponent_reach) {
  PSCFR_CHECK_MSG(static_cast<int>(opponent_reach.size()) == matrix.cols,
                  "reach vector does not match the matrix");
  std::vector<double> values(matrix.rows, 0.0);
  for (int r = 0; r < matrix.rows; ++r) {
    double v = 0.0;
    for (int c = 0; c < matrix.cols; ++c) v += matrix.at(r, c) * opponent_reach[c];
    values[r] = v;
  }
  return values;
}

void terminal_eval_generic(const PublicState& node, std::span<const double> reach1,
                           std::span<const double> reach2, std::span<double> values1,
                           std::span<double> values2, Counters& counters) {
  PSCFR_CHECK_MSG(node.terminal, "terminal_eval_generic on a non-terminal public state");
  PSCFR_CHECK(node.chwu.size() == 2);
  const ChwuMatrix& m1 = node.chwu[0];
  const ChwuMatrix& m2 = node.chwu[1];
  PSCFR_CHECK(static_cast<int>(reach1.size()) == m1.rows &&
              static_cast<int>(reach2.size()) == m1.cols);
  PSCFR_CHECK(values1.size() == reach1.size() && values2.size() == reach2.size());

  for (int a = 0; a < m1.rows; ++a) {
    double v = 0.0;
    const double r1 = reach1[a];
    for (int b = 0; b < m1.cols; ++b) {
      v += m1.at(a, b) * reach2[b];
      values2[b] += m2.at(b, a) * r1;
    }
    values1[a] += v;
  }
  counters.terminal_eval_ops += static_cast<std::uint64_t>(m1.rows) * m1.cols;
  counters.infostate_value_updates += static_cast<std::uint64_t>(m1.rows) + m1.cols;
}

namespace detail {

namespace {

void regret_match_into(const double* regrets, int num, double* out) {
  double positive_sum = 0.0;
  for (int a = 0; a < num; ++a) {
    out[a] = regrets[a] > kRegretMatchingZero ? regrets[a] : 0.0;
    positive_sum += out[a];
  }
  if (positive_sum <= 0.0) {
    std::fill(out, out + num, 1.0 / static_cast<double>(num));
  } else {
    for (int a = 0; a < num; ++a) out[a] /= positive_sum;
  }
}

// Public-tree CFR. The tree, the chance-weighted utility matrices, and the
// flat table layout are built once; iterations are array passes over them.
class PsCfr final : public CfrSolver {
 public:
  PsCfr(GamePtr game, AverageMode average, bool poker_terminal)
      : game_(std::move(game)), average_(average), poker_(poker_terminal) {
    if (game_->num_players() != 2) {
      throw ConfigError("the public-tree solver supports two-player games only");
    }
    tree_ = build_public_tree(game_);

    priv_base_.resize(tree_.size());
    action_base_.assign(tree_.size(), {});
    int privs = 0;
    int actions = 0;
    for (std::size_t n = 0; n < tree_.size(); ++n) {
      const PublicState& node = tree_.nodes[n];
      for (int i = 0; i < 2; ++i) {
        priv_base_[n][i] = privs;
        privs += static_cast<int>(node.privs[i].size());
        action_base_[n][i].assign(node.privs[i].size(), -1);
        for (std::size_t k = 0; k < node.privs[i].size(); ++k) {
          if (node.privs[i][k].actions.empty()) continue;
          action_base_[n][i][k] = actions;
          actions += static_cast<int>(node.privs[i][k].actions.size());
        }
      }
    }
    total_privs_ = privs;
    total_actions_ = actions;
    for (std::size_t n = 0; n < tree_.size(); ++n) {
      for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < tree_.nodes[n].privs[i].size(); ++k) {
          if (action_base_[n][i][k] < 0) continue;
          slots_.push_back(Slot{action_base_[n][i][k],
                                static_cast<int>(tree_.nodes[n].privs[i][k].actions.size())});
        }
      }
    }

    reach_.assign(total_privs_, 0.0);
    value_.assign(total_privs_, 0.0);
    q_.assign(total_actions_, 0.0);
    regret_.assign(total_actions_, 0.0);
    average_weight_.assign(total_actions_, 0.0);
    policy_.assign(total_actions_, 0.0);
    for (std::size_t n = 0; n < tree_.size(); ++n) {
      for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < tree_.nodes[n].privs[i].size(); ++k) {
          const int base = action_base_[n][i][k];
          if (base < 0) continue;
          const std::size_t num = tree_.nodes[n].privs[i][k].actions.size();
          for (std::size_t a = 0; a < num; ++a) {
            policy_[base + a] = 1.0 / static_cast<double>(num);
          }
        }
      }
    }

    if (poker_) {
      poker_info_.resize(tree_.size());
      for (std::size_t n = 0; n < tree_.size(); ++n) {
        if (tree_.nodes[n].terminal) {
          poker_info_[n] = classify_poker_terminal(*game_, tree_.nodes[n]);
        }
      }
    }
    chwu_entries_ = 0;
    for (const PublicState& node : tree_.nodes) {
      for (const ChwuMatrix& m : node.chwu) chwu_entries_ += static_cast<long long>(m.data.size());
    }
  }

  void run_iteration() override {
    const auto start = std::chrono::steady_clock::now();
    std::fill(value_.begin(), value_.end(), 0.0);
    std::fill(q_.begin(), q_.end(), 0.0);
    update(0);
    for (const Slot& slot : slots_) {
      regret_match_into(regret_.data() + slot.base, slot.num, policy_.data() + slot.base);
    }
    ++iteration_;
    accumulate_average(0);
    root_values_ = {value_[priv_base_[0][0]], value_[priv_base_[0][1]]};
    counters_.wall_nanoseconds += std::chrono::duration_cast<std::chrono::nanoseconds>(
                                      std::chrono::steady_clock::now() - start)
                                      .count();
  }

  long long iterations_done() const override { return iteration_; }

  Policy current_policy() const override { return export_policy(policy_, false); }

  Policy average_policy() const override { return export_policy(average_weight_, true); }

  const Counters& counters() const override { return counters_; }

  std::vector<double> root_values() const override { return root_values_; }

  std::map<std::string, PolicyEntry> regret_table() const override {
    return export_raw(regret_);
  }

  long long table_entries() const override {
    return 4LL * total_actions_ + 2LL * total_privs_ + chwu_entries_;
  }

  const PublicTree& tree() const { return tree_; }

 private:
  int flat_priv(std::size_t n, int i, int k) const { return priv_base_[n][i] + k; }

  void update(int n) {
    const PublicState& node = tree_.nodes[n];
    if (n == 0) {
      for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < node.privs[i].size(); ++k) {
          reach_[flat_priv(0, i, static_cast<int>(k))] = 1.0;
        }
      }
    }

    if (node.terminal) {
      const int n1 = static_cast<int>(node.privs[0].size());
      const int n2 = static_cast<int>(node.privs[1].size());
      std::span<const double> r1(reach_.data() + priv_base_[n][0], n1);
      std::span<const double> r2(reach_.data() + priv_base_[n][1], n2);
      std::span<double> v1(value_.data() + priv_base_[n][0], n1);
      std::span<double> v2(value_.data() + priv_base_[n][1], n2);
      if (poker_) {
        terminal_eval_poker_linear(poker_info_[n], r1, r2, v1, v2, counters_);
      } else {
        terminal_eval_generic(node, r1, r2, v1, v2, counters_);
      }
      return;
    }

    for (int child : node.children) {
      const PublicState& child_node = tree_.nodes[child];
      // downward pass: extend reach probabilities
      for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < child_node.privs[i].size(); ++k) {
          const PrivateInfostate& priv = child_node.privs[i][k];
          double r = reach_[flat_priv(n, i, priv.parent)];
          if (priv.parent_action >= 0) {
            r *= policy_[action_base_[n][i][priv.parent] + priv.parent_action];
          }
          reach_[flat_priv(child, i, static_cast<int>(k))] = r;
        }
      }
      update(child);
      // upward pass: fold child values into action values or pass them through
      for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < child_node.privs[i].size(); ++k) {
          const PrivateInfostate& priv = child_node.privs[i][k];
          const double v = value_[flat_priv(child, i, static_cast<int>(k))];
          if (priv.parent_action >= 0) {
            q_[action_base_[n][i][priv.parent] + priv.parent_action] += v;
            ++counters_.infostate_action_updates;
          } else {
            value_[flat_priv(n, i, priv.parent)] += v;
            ++counters_.infostate_value_updates;
          }
        }
      }
    }

    // upward pass: infostate values and regrets at this node's decisions
    for (int i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < node.privs[i].size(); ++k) {
        const int base = action_base_[n][i][k];
        if (base < 0) continue;
        const int num = static_cast<int>(node.privs[i][k].actions.size());
        double v = 0.0;
        for (int a = 0; a < num; ++a) v += policy_[base + a] * q_[base + a];
        value_[flat_priv(n, i, static_cast<int>(k))] = v;
        ++counters_.infostate_value_updates;
        for (int a = 0; a < num; ++a) regret_[base + a] += q_[base + a] - v;
      }
    }
  }

  // Own-reach pass folding the freshly matched profile into the average.
  void accumulate_average(int n) {
    const PublicState& node = tree_.nodes[n];
    if (n == 0) {
      for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < node.privs[i].size(); ++k) {
          reach_[flat_priv(0, i, static_cast<int>(k))] = 1.0;
        }
      }
    }
    for (int i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < node.privs[i].size(); ++k) {
        const int base = action_base_[n][i][k];
        if (base < 0) continue;
        const int num = static_cast<int>(node.privs[i][k].actions.size());
        const double weight = average_ == AverageMode::reach_weighted
                                  ? reach_[flat_priv(n, i, static_cast<int>(k))]
                                  : 1.0;
        for (int a = 0; a < num; ++a) average_weight_[base + a] += weight * policy_[base + a];
      }
    }
    for (int child : node.children) {
      const PublicState& child_node = tree_.nodes[child];
      for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < child_node.privs[i].size(); ++k) {
          const PrivateInfostate& priv = child_node.privs[i][k];
          double r = reach_[flat_priv(n, i, priv.parent)];
          if (priv.parent_action >= 0) {
            r *= policy_[action_base_[n][i][priv.parent] + priv.parent_action];
          }
          reach_[flat_priv(child, i, static_cast<int>(k))] = r;
        }
      }
      accumulate_average(child);
    }
  }

  Policy export_policy(const std::vector<double>& weights, bool normalize) const {
    Policy out;
    for (std::size_t n = 0; n < tree_.size(); ++n) {
      for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < tree_.nodes[n].privs[i].size(); ++k) {
          const PrivateInfostate& priv = tree_.nodes[n].privs[i][k];
          const int base = action_base_[n][i][k];
          if (base < 0) continue;
          const std::size_t num = priv.actions.size();
          std::vector<double> probs(weights.begin() + base, weights.begin() + base + num);
          if (normalize) {
            double sum = 0.0;
            for (double w : probs) sum += w;
            if (sum <= 0.0) {
              std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(num));
            } else {
              for (double& w : probs) w /= sum;
            }
          }
          out.emplace(priv.infostate_key, PolicyEntry{priv.action_tokens, std::move(probs)});
        }
      }
    }
    return out;
  }

  std::map<std::string, PolicyEntry> export_raw(const std::vector<double>& values) const {
    std::map<std::string, PolicyEntry> out;
    for (std::size_t n = 0; n < tree_.size(); ++n) {
      for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < tree_.nodes[n].privs[i].size(); ++k) {
          const PrivateInfostate& priv = tree_.nodes[n].privs[i][k];
          const int base = action_base_[n][i][k];
          if (base < 0) continue;
          out.emplace(priv.infostate_key,
                      PolicyEntry{priv.action_tokens,
                                  std::vector<double>(values.begin() + base,
                                                      values.begin() + base + priv.actions.size())});
        }
      }
    }
    return out;
  }

  struct Slot {
    int base = 0;
    int num = 0;
  };

  GamePtr game_;
  AverageMode average_;
  bool poker_;
  PublicTree tree_;
  std::vector<Slot> slots_;
  std::vector<std::array<int, 2>> priv_base_;
  std::vector<std::array<std::vector<int>, 2>> action_base_;
  int total_privs_ = 0;
  int total_actions_ = 0;
  long long chwu_entries_ = 0;
  long long iteration_ = 0;
  std::vector<double> reach_, value_, q_, regret_, average_weight_, policy_;
  std::vector<PokerTerminalInfo> poker_info_;
  Counters counters_;
  std::vector<double> root_values_;
};

}  // namespace

std::unique_ptr<CfrSolver> make_ps_solver(GamePtr game, AverageMode average, bool poker_terminal) {
  return std::make_unique<PsCfr>(std::move(game), average, poker_terminal);
}

}  // namespace detail
}  // namespace pscfr

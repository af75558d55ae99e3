#include "pscfr/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "pscfr/history.hpp"

namespace pscfr {

namespace {

// Probability of `token` under the profile at `key`; uniform when the
// infostate is missing from the profile.
double action_prob(const Policy& profile, const std::string& key, const std::string& token,
                   std::size_t num_actions) {
  auto it = profile.find(key);
  if (it == profile.end()) return 1.0 / static_cast<double>(num_actions);
  const PolicyEntry& entry = it->second;
  for (std::size_t a = 0; a < entry.actions.size(); ++a) {
    if (entry.actions[a] == token) return entry.probs[a];
  }
  throw ContractError("policy entry is missing action '" + token + "' at " + key);
}

std::vector<double> expected_values_walk(const History& h, const Policy& profile) {
  if (h.is_terminal()) {
    std::vector<double> values = h.utilities();
    return values;
  }
  const std::vector<int> actors = h.active_players();
  std::vector<std::string> keys(actors.size());
  std::vector<std::size_t> arity(actors.size());
  for (std::size_t k = 0; k < actors.size(); ++k) {
    keys[k] = h.infostate_key(actors[k]);
    arity[k] = h.legal_actions(actors[k]).size();
  }
  std::vector<double> values(h.game().num_players(), 0.0);
  for (const HistorySuccessor& succ : h.successors()) {
    double weight = succ.probability;
    for (std::size_t k = 0; k < actors.size(); ++k) {
      weight *= action_prob(profile, keys[k], succ.joint_tokens[k], arity[k]);
    }
    if (weight == 0.0) continue;
    const std::vector<double> child = expected_values_walk(succ.history, profile);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += weight * child[i];
  }
  return values;
}

// The best responder's view of the game, compiled once per call: terminal
// utilities, opponent-and-chance step weights, and the responder's decision
// infostates with their counterfactual member weights. Evaluation is then
// pure arithmetic over node ids.
struct BrSolver {
  struct Node {
    double utility = 0.0;  // terminal payoff for the responder
    int infostate = -1;    // set when the responder acts here
    // Non-decision nodes: opponent/chance-weighted children. Decision nodes:
    // one weighted child list per own action.
    std::vector<std::pair<double, int>> children;
    std::vector<std::vector<std::pair<double, int>>> action_children;
    double cached_value = 0.0;
    bool evaluated = false;
  };
  struct Infostate {
    std::string key;
    std::vector<std::string> action_tokens;
    std::vector<std::pair<double, int>> members;  // (P_c * opponent reach, node)
    int best = -1;
  };

  const Game& game;
  const Policy& profile;
  int me;
  std::vector<Node> nodes;
  std::vector<Infostate> infostates;
  std::unordered_map<std::string, int> infostate_ids;

  int compile(const History& h, double opp_reach) {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (h.is_terminal()) {
      nodes[id].utility = h.utilities()[me];
      return id;
    }
    const std::vector<int> actors = h.active_players();
    int my_slot = -1;
    for (std::size_t k = 0; k < actors.size(); ++k) {
      if (actors[k] == me) my_slot = static_cast<int>(k);
    }
    std::vector<Action> my_actions;
    if (my_slot >= 0) {
      const std::string key = h.infostate_key(me);
      auto [it, inserted] = infostate_ids.try_emplace(key, infostates.size());
      if (inserted) {
        Infostate state;
        state.key = key;
        for (Action a : h.legal_actions(me)) {
          state.action_tokens.push_back(h.action_token(me, a));
        }
        infostates.push_back(std::move(state));
      }
      nodes[id].infostate = it->second;
      infostates[it->second].members.emplace_back(opp_reach * h.chance_reach(), id);
      my_actions = h.legal_actions(me);
      nodes[id].action_children.resize(my_actions.size());
    }

    for (const HistorySuccessor& succ : h.successors()) {
      // Opponent policy accumulates into the member weights; chance stays in
      // each history's chance_reach. Step weights carry both for evaluation.
      double opp_pi = 1.0;
      for (std::size_t k = 0; k < actors.size(); ++k) {
        if (actors[k] == me) continue;
        opp_pi *= action_prob(profile, h.infostate_key(actors[k]), succ.joint_tokens[k],
                              h.legal_actions(actors[k]).size());
      }
      const double w = succ.probability * opp_pi;
      const int child = compile(succ.history, opp_reach * opp_pi);
      if (my_slot >= 0) {
        const auto pos = std::find(my_actions.begin(), my_actions.end(), succ.joint[my_slot]);
        nodes[id].action_children[pos - my_actions.begin()].emplace_back(w, child);
      } else {
        nodes[id].children.emplace_back(w, child);
      }
    }
    return id;
  }

  double value(int id) {
    Node& node = nodes[id];
    if (node.evaluated) return node.cached_value;
    double total = 0.0;
    if (node.infostate >= 0) {
      for (const auto& [w, child] : node.action_children[best_action(node.infostate)]) {
        total += w * value(child);
      }
    } else {
      total = node.utility;
      for (const auto& [w, child] : node.children) total += w * value(child);
    }
    node.evaluated = true;
    node.cached_value = total;
    return total;
  }

  double action_value(int id, int action) {
    double total = 0.0;
    for (const auto& [w, child] : nodes[id].action_children[action]) {
      total += w * value(child);
    }
    return total;
  }

  int best_action(int infostate) {
    Infostate& state = infostates[infostate];
    if (state.best >= 0) return state.best;
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < state.action_tokens.size(); ++a) {
      double v = 0.0;
      for (const auto& [weight, node] : state.members) {
        v += weight * action_value(node, static_cast<int>(a));
      }
      if (v > best_value + 1e-15) {
        best_value = v;
        best = static_cast<int>(a);
      }
    }
    state.best = best;
    return best;
  }
};

}  // namespace

std::vector<double> expected_values(const Game& game, const Policy& profile) {
  GamePtr shared(&game, [](const Game*) {});
  return expected_values_walk(History::root(shared), profile);
}

BrResult best_response_value(const Game& game, const Policy& profile, int player) {
  if (game.num_players() != 2) {
    throw ConfigError("best_response_value supports two-player games only");
  }
  PSCFR_CHECK(player == 0 || player == 1);
  BrSolver solver{game, profile, player, {}, {}, {}};
  GamePtr shared(&game, [](const Game*) {});
  const int root = solver.compile(History::root(shared), 1.0);

  BrResult result;
  result.player = player;
  result.value = solver.value(root);
  for (std::size_t i = 0; i < solver.infostates.size(); ++i) {
    const BrSolver::Infostate& state = solver.infostates[i];
    PolicyEntry entry;
    entry.actions = state.action_tokens;
    entry.probs.assign(entry.actions.size(), 0.0);
    entry.probs[solver.best_action(static_cast<int>(i))] = 1.0;
    result.policy.emplace(state.key, std::move(entry));
  }
  return result;
}

double exploitability(const Game& game, const Policy& profile) {
  if (game.num_players() != 2) {
    throw ConfigError("exploitability supports two-player zero-sum games only");
  }
  // Verify zero-sum on every terminal before using the two-sided formula.
  GamePtr shared(&game, [](const Game*) {});
  std::vector<History> frontier;
  frontier.push_back(History::root(shared));
  while (!frontier.empty()) {
    History h = std::move(frontier.back());
    frontier.pop_back();
    if (h.is_terminal()) {
      if (std::abs(h.utilities()[0] + h.utilities()[1]) > 1e-9) {
        throw ConfigError("exploitability requires a zero-sum game");
      }
      continue;
    }
    for (HistorySuccessor& succ : h.successors()) frontier.push_back(std::move(succ.history));
  }

  const double br1 = best_response_value(game, profile, 0).value;
  const double br2 = best_response_value(game, profile, 1).value;
  return (br1 + br2) / 2.0;
}

double strategy_distance(const Policy& a, const Policy& b) {
  double distance = 0.0;
  auto compare = [&](const Policy& lhs, const Policy& rhs) {
    for (const auto& [key, entry] : lhs) {
      auto it = rhs.find(key);
      for (std::size_t i = 0; i < entry.actions.size(); ++i) {
        double other = 1.0 / static_cast<double>(entry.actions.size());
        if (it != rhs.end()) {
          const PolicyEntry& out = it->second;
          const auto pos = std::find(out.actions.begin(), out.actions.end(), entry.actions[i]);
          PSCFR_CHECK_MSG(pos != out.actions.end(), "policies disagree on legal actions");
          other = out.probs[pos - out.actions.begin()];
        }
        distance = std::max(distance, std::abs(entry.probs[i] - other));
      }
    }
  };
  compare(a, b);
  compare(b, a);
  return distance;
}

}  // namespace pscfr

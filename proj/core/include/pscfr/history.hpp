#pragma once

#include <string>
#include <vector>

#include "pscfr/game.hpp"

namespace pscfr {

// A player's information state: their private observations and own actions,
// plus the public observation sequence. The canonical key grammar is
//   <player>:<private tokens joined by '/'>|<public tokens joined by '/'>
// with the player rendered 1-based.
struct InfoState {
  int player = 0;  // 0-based
  std::vector<std::string> private_seq;
  std::vector<std::string> public_seq;

  std::string key() const;
  bool operator==(const InfoState&) const = default;
};

InfoState parse_infostate_key(const std::string& key);

std::string render_infostate_key(int player, const std::vector<std::string>& private_seq,
                                 const std::vector<std::string>& public_seq);

struct HistorySuccessor;

// A concrete playthrough prefix: the current world plus everything needed by
// the traversals (chance reach, accumulated rewards, observation sequences).
// Histories are materialized lazily via successors(); nothing below a history
// is retained once the caller drops it.
class History {
 public:
  static History root(GamePtr game);

  const Game& game() const { return *game_; }
  const World& world() const { return *world_; }
  bool is_terminal() const { return terminal_; }
  int depth() const { return static_cast<int>(public_seq_.size()); }

  // Product of transition probabilities along the history.
  double chance_reach() const { return chance_reach_; }
  // Sum of the reward vectors along the history; the utility vector at terminals.
  const std::vector<double>& utilities() const { return reward_sum_; }

  const std::vector<std::string>& public_seq() const { return public_seq_; }
  const std::vector<std::string>& private_seq(int player) const { return private_seq_[player]; }

  std::vector<int> active_players() const;
  std::vector<Action> legal_actions(int player) const;
  std::string action_token(int player, Action a) const;

  InfoState infostate(int player) const;
  std::string infostate_key(int player) const;
  // The part of the key after '|'; identifies this history's public state.
  std::string public_key() const;

  // All (joint action, outcome) extensions of a non-terminal history, in the
  // game's enumeration order. Throws ContractError on terminal input; checks
  // that each joint action's outcome probabilities sum to 1 within 1e-12.
  std::vector<HistorySuccessor> successors() const;

 private:
  History() = default;

  GamePtr game_;
  WorldPtr world_;
  double chance_reach_ = 1.0;
  std::vector<double> reward_sum_;
  std::vector<std::vector<std::string>> private_seq_;
  std::vector<std::string> public_seq_;
  bool terminal_ = false;
};

struct HistorySuccessor {
  JointAction joint;                      // aligned with the parent's active_players()
  std::vector<std::string> joint_tokens;  // same alignment
  double probability = 1.0;               // outcome probability given the joint action
  History history;
};

}  // namespace pscfr

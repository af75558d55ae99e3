#include "pscfr/history.hpp"

#include <cmath>
#include <cstdlib>

namespace pscfr {

namespace {

bool valid_token(const std::string& token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (c == '/' || c == '|' || c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
    if (static_cast<unsigned char>(c) >= 0x80) return false;
  }
  return true;
}

}  // namespace

std::string render_infostate_key(int player, const std::vector<std::string>& private_seq,
                                 const std::vector<std::string>& public_seq) {
  std::string key = std::to_string(player + 1);
  key.push_back(':');
  key += join(private_seq, '/');
  key.push_back('|');
  key += join(public_seq, '/');
  return key;
}

std::string InfoState::key() const { return render_infostate_key(player, private_seq, public_seq); }

InfoState parse_infostate_key(const std::string& key) {
  std::size_t colon = key.find(':');
  PSCFR_CHECK_MSG(colon != std::string::npos, "infostate key missing ':'");
  std::size_t bar = key.find('|', colon + 1);
  PSCFR_CHECK_MSG(bar != std::string::npos, "infostate key missing '|'");
  const std::string player_text = key.substr(0, colon);
  char* end = nullptr;
  long player = std::strtol(player_text.c_str(), &end, 10);
  PSCFR_CHECK_MSG(end != nullptr && *end == '\0' && player >= 1, "bad player in infostate key");
  InfoState state;
  state.player = static_cast<int>(player - 1);
  state.private_seq = split(std::string_view(key).substr(colon + 1, bar - colon - 1), '/');
  state.public_seq = split(std::string_view(key).substr(bar + 1), '/');
  return state;
}

History History::root(GamePtr game) {
  PSCFR_CHECK(game != nullptr);
  History h;
  h.game_ = std::move(game);
  h.world_ = h.game_->initial_world();
  h.reward_sum_.assign(h.game_->num_players(), 0.0);
  h.private_seq_.resize(h.game_->num_players());
  h.terminal_ = h.game_->is_terminal(*h.world_);
  return h;
}

std::vector<int> History::active_players() const {
  if (terminal_) return {};
  return game_->active_players(*world_);
}

std::vector<Action> History::legal_actions(int player) const {
  return game_->legal_actions(*world_, player);
}

std::string History::action_token(int player, Action a) const {
  return game_->action_token(player, a);
}

InfoState History::infostate(int player) const {
  PSCFR_CHECK(player >= 0 && player < game_->num_players());
  return InfoState{player, private_seq_[player], public_seq_};
}

std::string History::infostate_key(int player) const {
  PSCFR_CHECK(player >= 0 && player < game_->num_players());
  return render_infostate_key(player, private_seq_[player], public_seq_);
}

std::string History::public_key() const { return join(public_seq_, '/'); }

std::vector<HistorySuccessor> History::successors() const {
  PSCFR_CHECK_MSG(!terminal_, "successors() called on a terminal history");
  const int num_players = game_->num_players();
  const std::vector<int> actors = game_->active_players(*world_);
  std::vector<std::vector<Action>> actions(actors.size());
  for (std::size_t k = 0; k < actors.size(); ++k) {
    actions[k] = game_->legal_actions(*world_, actors[k]);
    PSCFR_CHECK_MSG(!actions[k].empty(), "active player with no legal actions");
  }

  std::vector<HistorySuccessor> out;
  JointAction joint(actors.size(), 0);
  std::vector<std::size_t> idx(actors.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < actors.size(); ++k) joint[k] = actions[k][idx[k]];
    std::vector<std::string> joint_tokens(actors.size());
    for (std::size_t k = 0; k < actors.size(); ++k) {
      joint_tokens[k] = game_->action_token(actors[k], joint[k]);
      PSCFR_CHECK_MSG(valid_token(joint_tokens[k]), "invalid action token");
    }

    const std::vector<Outcome> outcomes = game_->apply(*world_, joint);
    PSCFR_CHECK_MSG(!outcomes.empty(), "apply() returned no outcomes");
    double prob_sum = 0.0;
    for (const Outcome& o : outcomes) {
      prob_sum += o.probability;
      PSCFR_CHECK_MSG(o.probability > 0.0, "non-positive outcome probability");
      PSCFR_CHECK_MSG(valid_token(o.public_obs), "invalid public observation token");
      PSCFR_CHECK_MSG(o.rewards.empty() || static_cast<int>(o.rewards.size()) == num_players,
                      "reward vector size mismatch");
      PSCFR_CHECK_MSG(o.private_obs.empty() ||
                          static_cast<int>(o.private_obs.size()) == num_players,
                      "private observation vector size mismatch");

      History child;
      child.game_ = game_;
      child.world_ = o.world;
      child.chance_reach_ = chance_reach_ * o.probability;
      child.reward_sum_ = reward_sum_;
      if (!o.rewards.empty()) {
        for (int i = 0; i < num_players; ++i) child.reward_sum_[i] += o.rewards[i];
      }
      child.private_seq_ = private_seq_;
      for (std::size_t k = 0; k < actors.size(); ++k) {
        child.private_seq_[actors[k]].push_back(joint_tokens[k]);
      }
      if (!o.private_obs.empty()) {
        for (int i = 0; i < num_players; ++i) {
          if (o.private_obs[i].empty()) continue;
          PSCFR_CHECK_MSG(valid_token(o.private_obs[i]), "invalid private observation token");
          child.private_seq_[i].push_back(o.private_obs[i]);
        }
      }
      child.public_seq_ = public_seq_;
      child.public_seq_.push_back(o.public_obs);
      child.terminal_ = game_->is_terminal(*o.world);

      out.push_back(HistorySuccessor{joint, joint_tokens, o.probability, std::move(child)});
    }
    PSCFR_CHECK_MSG(std::abs(prob_sum - 1.0) <= 1e-12, "transition distribution does not sum to 1");

    std::size_t k = 0;
    while (k < actors.size() && idx[k] + 1 == actions[k].size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == actors.size()) break;
    ++idx[k];
  }
  return out;
}

}  // namespace pscfr

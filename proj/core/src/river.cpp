#include <algorithm>
#include <memory>

#include "pscfr/games.hpp"
#include "river_betting.hpp"

namespace pscfr {

namespace {

using river_detail::BettingState;

constexpr char kActionChars[4] = {'f', 'c', 'p', 'a'};

struct RiverWorld : World {
  bool dealt = false;
  std::vector<Card> hand[2];
  HandRank rank[2];
  BettingState bet;
};

const RiverWorld& rw(const World& w) { return static_cast<const RiverWorld&>(w); }

std::string hand_token(const std::vector<Card>& hand) {
  std::string token;
  for (const Card& c : hand) token += c.token();
  return token;
}

class RiverGame : public Game {
 public:
  explicit RiverGame(RiverConfig config) : config_(std::move(config)) {
    deals_ = enumerate_deals();
  }

  const RiverConfig& config() const { return config_; }

  std::string name() const override {
    return "river:deck=" + std::to_string(config_.deck.size()) +
           ",hand=" + std::to_string(config_.hand_size) + ",pot=" + std::to_string(config_.pot) +
           ",stack=" + std::to_string(config_.stack) + ",abs=" + config_.abstraction;
  }
  int num_players() const override { return 2; }

  WorldPtr initial_world() const override { return std::make_shared<RiverWorld>(); }

  bool is_terminal(const World& w) const override {
    const RiverWorld& s = rw(w);
    return s.dealt && s.bet.status != BettingState::Status::acting;
  }

  std::vector<int> active_players(const World& w) const override {
    const RiverWorld& s = rw(w);
    if (!s.dealt || s.bet.status != BettingState::Status::acting) return {};
    return {s.bet.to_act};
  }

  std::vector<Action> legal_actions(const World& w, int player) const override {
    const RiverWorld& s = rw(w);
    PSCFR_CHECK(s.dealt && s.bet.status == BettingState::Status::acting &&
                s.bet.to_act == player);
    std::vector<Action> actions;
    for (char c : s.bet.legal()) {
      actions.push_back(static_cast<Action>(std::string(kActionChars, 4).find(c)));
    }
    return actions;
  }

  std::string action_token(int, Action a) const override {
    PSCFR_CHECK(a >= 0 && a < 4);
    return std::string(1, kActionChars[a]);
  }

  std::vector<Outcome> apply(const World& w, const JointAction& joint) const override {
    const RiverWorld& s = rw(w);
    if (!s.dealt) {
      PSCFR_CHECK(joint.empty());
      std::vector<Outcome> outcomes;
      const double p = 1.0 / static_cast<double>(deals_.size());
      for (const auto& deal : deals_) {
        Outcome o;
        auto next = std::make_shared<RiverWorld>();
        next->dealt = true;
        next->hand[0] = deal.first;
        next->hand[1] = deal.second;
        next->rank[0] = hand_rank(config_, deal.first);
        next->rank[1] = hand_rank(config_, deal.second);
        next->bet = BettingState::start(config_);
        o.world = std::move(next);
        o.probability = p;
        o.public_obs = kStartObs;
        o.private_obs = {hand_token(deal.first), hand_token(deal.second)};
        outcomes.push_back(std::move(o));
      }
      return outcomes;
    }

    PSCFR_CHECK(joint.size() == 1);
    const char action = kActionChars[joint[0]];
    auto next = std::make_shared<RiverWorld>(s);
    next->bet.apply(action);

    Outcome o;
    o.public_obs = std::string(1, action);
    if (next->bet.status != BettingState::Status::acting) {
      o.rewards = terminal_utilities(*next);
    }
    o.world = std::move(next);
    return {std::move(o)};
  }

 private:
  std::vector<double> terminal_utilities(const RiverWorld& s) const {
    if (s.bet.status == BettingState::Status::fold_end) {
      const int folder = s.bet.folder;
      const double lost = s.bet.contribution(folder);
      return folder == 0 ? std::vector<double>{-lost, lost} : std::vector<double>{lost, -lost};
    }
    if (s.rank[0] == s.rank[1]) return {0.0, 0.0};
    const int winner = s.rank[0] > s.rank[1] ? 0 : 1;
    const double lost = s.bet.contribution(1 - winner);
    return winner == 0 ? std::vector<double>{lost, -lost} : std::vector<double>{-lost, lost};
  }

  std::vector<std::pair<std::vector<Card>, std::vector<Card>>> enumerate_deals() const {
    std::vector<std::vector<Card>> hands;
    const auto& deck = config_.deck;
    if (config_.hand_size == 1) {
      for (const Card& c : deck) hands.push_back({c});
    } else {
      for (std::size_t i = 0; i < deck.size(); ++i) {
        for (std::size_t j = i + 1; j < deck.size(); ++j) {
          hands.push_back({deck[i], deck[j]});
        }
      }
    }
    std::vector<std::pair<std::vector<Card>, std::vector<Card>>> deals;
    for (const auto& h1 : hands) {
      for (const auto& h2 : hands) {
        bool overlap = false;
        for (const Card& a : h1) {
          for (const Card& b : h2) overlap = overlap || a == b;
        }
        if (!overlap) deals.emplace_back(h1, h2);
      }
    }
    return deals;
  }

  RiverConfig config_;
  std::vector<std::pair<std::vector<Card>, std::vector<Card>>> deals_;
};

}  // namespace

long long RiverConfig::num_deals() const {
  const long long n = static_cast<long long>(deck.size());
  if (hand_size == 1) return n * (n - 1);
  const long long h1 = n * (n - 1) / 2;
  const long long h2 = (n - 2) * (n - 3) / 2;
  return h1 * h2;
}

GamePtr make_river_game(const RiverConfig& config) { return std::make_shared<RiverGame>(config); }

const RiverConfig* river_config_of(const Game& game) {
  const auto* river = dynamic_cast<const RiverGame*>(&game);
  return river == nullptr ? nullptr : &river->config();
}

}  // namespace pscfr

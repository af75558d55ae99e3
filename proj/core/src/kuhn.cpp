#include <memory>

#include "pscfr/games.hpp"

namespace pscfr {

namespace {

constexpr int kCheckCall = 0;
constexpr int kBet = 1;
constexpr int kFold = 2;

const char* kCardTokens[3] = {"J", "Q", "K"};

// bets is the betting line over tokens c/b/f. Terminal lines:
// cc, bc, bf, cbc, cbf.
struct KuhnWorld : World {
  int card1 = -1;
  int card2 = -1;
  std::string bets;
};

const KuhnWorld& kw(const World& w) { return static_cast<const KuhnWorld&>(w); }

bool line_terminal(const std::string& bets) {
  return bets == "cc" || bets == "bc" || bets == "bf" || bets == "cbc" || bets == "cbf";
}

class KuhnGame : public Game {
 public:
  std::string name() const override { return "kuhn"; }
  int num_players() const override { return 2; }
  WorldPtr initial_world() const override { return std::make_shared<KuhnWorld>(); }

  bool is_terminal(const World& w) const override {
    return kw(w).card1 >= 0 && line_terminal(kw(w).bets);
  }

  std::vector<int> active_players(const World& w) const override {
    const KuhnWorld& state = kw(w);
    if (state.card1 < 0 || line_terminal(state.bets)) return {};
    return {static_cast<int>(state.bets.size()) % 2};
  }

  std::vector<Action> legal_actions(const World& w, int player) const override {
    const KuhnWorld& state = kw(w);
    PSCFR_CHECK(!active_players(w).empty() && active_players(w)[0] == player);
    const bool facing_bet = !state.bets.empty() && state.bets.back() == 'b';
    if (facing_bet) return {kFold, kCheckCall};
    return {kCheckCall, kBet};
  }

  std::string action_token(int, Action a) const override {
    switch (a) {
      case kCheckCall: return "c";
      case kBet: return "b";
      default: return "f";
    }
  }

  std::vector<Outcome> apply(const World& w, const JointAction& joint) const override {
    const KuhnWorld& state = kw(w);
    if (state.card1 < 0) {
      PSCFR_CHECK(joint.empty());
      std::vector<Outcome> outcomes;
      for (int c1 = 0; c1 < 3; ++c1) {
        for (int c2 = 0; c2 < 3; ++c2) {
          if (c1 == c2) continue;
          Outcome o;
          auto next = std::make_shared<KuhnWorld>();
          next->card1 = c1;
          next->card2 = c2;
          o.world = std::move(next);
          o.probability = 1.0 / 6.0;
          o.public_obs = kStartObs;
          o.private_obs = {kCardTokens[c1], kCardTokens[c2]};
          outcomes.push_back(std::move(o));
        }
      }
      return outcomes;
    }

    PSCFR_CHECK(joint.size() == 1);
    const char token = action_token(0, joint[0])[0];
    Outcome o;
    auto next = std::make_shared<KuhnWorld>(state);
    next->bets.push_back(token);
    o.public_obs = std::string(1, token);
    if (line_terminal(next->bets)) {
      o.rewards = terminal_utilities(*next);
    }
    o.world = std::move(next);
    return {std::move(o)};
  }

 private:
  static std::vector<double> terminal_utilities(const KuhnWorld& state) {
    const double high = state.card1 > state.card2 ? 1.0 : -1.0;  // P1's sign at showdown
    if (state.bets == "cc") return {high, -high};
    if (state.bets == "bf") return {1.0, -1.0};    // P2 folded the ante
    if (state.bets == "cbf") return {-1.0, 1.0};   // P1 folded the ante
    return {2.0 * high, -2.0 * high};              // bc / cbc showdowns for the bet pot
  }
};

}  // namespace

GamePtr make_kuhn_game() { return std::make_shared<KuhnGame>(); }

}  // namespace pscfr

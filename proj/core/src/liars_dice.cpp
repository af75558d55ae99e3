#include <map>
#include <memory>

#include "pscfr/games.hpp"

namespace pscfr {

namespace {

// Bids are (quantity, face) ordered quantity-major, encoded as
// (q-1)*faces + (f-1). No wild faces. The challenge is the only way the game
// ends: the bid stands when at least `quantity` dice across both players show
// the face, and the loser pays 1.
struct DiceWorld : World {
  std::vector<int> roll[2];  // sorted faces, one entry per die
  std::vector<int> bids;     // strictly increasing bid codes
  bool challenged = false;
};

const DiceWorld& dw(const World& w) { return static_cast<const DiceWorld&>(w); }

class LiarsDiceGame : public Game {
 public:
  LiarsDiceGame(int dice, int faces) : dice_(dice), faces_(faces) {
    num_bids_ = 2 * dice_ * faces_;
    rolls_ = enumerate_rolls();
  }

  std::string name() const override {
    return "liars_dice:d=" + std::to_string(dice_) + ",f=" + std::to_string(faces_);
  }
  int num_players() const override { return 2; }
  WorldPtr initial_world() const override { return std::make_shared<DiceWorld>(); }

  bool is_terminal(const World& w) const override { return dw(w).challenged; }

  std::vector<int> active_players(const World& w) const override {
    const DiceWorld& s = dw(w);
    if (s.roll[0].empty() || s.challenged) return {};
    return {static_cast<int>(s.bids.size()) % 2};
  }

  std::vector<Action> legal_actions(const World& w, int player) const override {
    const DiceWorld& s = dw(w);
    PSCFR_CHECK(!active_players(w).empty() && active_players(w)[0] == player);
    std::vector<Action> actions;
    const int from = s.bids.empty() ? 0 : s.bids.back() + 1;
    for (int b = from; b < num_bids_; ++b) actions.push_back(b);
    if (!s.bids.empty()) actions.push_back(num_bids_);  // challenge
    return actions;
  }

  std::string action_token(int, Action a) const override {
    if (a == num_bids_) return "liar";
    const int quantity = a / faces_ + 1;
    const int face = a % faces_ + 1;
    return "b" + std::to_string(quantity) + "x" + std::to_string(face);
  }

  std::vector<Outcome> apply(const World& w, const JointAction& joint) const override {
    const DiceWorld& s = dw(w);
    if (s.roll[0].empty()) {
      PSCFR_CHECK(joint.empty());
      std::vector<Outcome> outcomes;
      for (const auto& [r1, p1] : rolls_) {
        for (const auto& [r2, p2] : rolls_) {
          Outcome o;
          auto next = std::make_shared<DiceWorld>();
          next->roll[0] = r1;
          next->roll[1] = r2;
          o.world = std::move(next);
          o.probability = p1 * p2;
          o.public_obs = kStartObs;
          o.private_obs = {roll_token(r1), roll_token(r2)};
          outcomes.push_back(std::move(o));
        }
      }
      return outcomes;
    }

    PSCFR_CHECK(joint.size() == 1);
    const Action a = joint[0];
    Outcome o;
    auto next = std::make_shared<DiceWorld>(s);
    if (a == num_bids_) {
      next->challenged = true;
      o.rewards = challenge_utilities(s);
    } else {
      next->bids.push_back(a);
    }
    o.public_obs = action_token(0, a);
    o.world = std::move(next);
    return {std::move(o)};
  }

 private:
  std::vector<double> challenge_utilities(const DiceWorld& s) const {
    const int bid = s.bids.back();
    const int quantity = bid / faces_ + 1;
    const int face = bid % faces_ + 1;
    int count = 0;
    for (const auto& roll : s.roll) {
      for (int die : roll) count += (die == face);
    }
    const int challenger = static_cast<int>(s.bids.size()) % 2;
    const int loser = count >= quantity ? challenger : 1 - challenger;
    return loser == 0 ? std::vector<double>{-1.0, 1.0} : std::vector<double>{1.0, -1.0};
  }

  static std::string roll_token(const std::vector<int>& roll) {
    std::string token = "r";
    for (int die : roll) token += std::to_string(die);
    return token;
  }

  // Sorted rolls with multinomial probabilities; dice are indistinguishable.
  std::vector<std::pair<std::vector<int>, double>> enumerate_rolls() const {
    std::map<std::vector<int>, long long> weight;
    std::vector<int> roll(dice_, 1);
    long long total = 0;
    while (true) {
      std::vector<int> sorted = roll;
      std::sort(sorted.begin(), sorted.end());
      ++weight[sorted];
      ++total;
      int k = 0;
      while (k < dice_ && roll[k] == faces_) roll[k++] = 1;
      if (k == dice_) break;
      ++roll[k];
    }
    std::vector<std::pair<std::vector<int>, double>> out;
    out.reserve(weight.size());
    for (const auto& [sorted, count] : weight) {
      out.emplace_back(sorted, static_cast<double>(count) / static_cast<double>(total));
    }
    return out;
  }

  int dice_;
  int faces_;
  int num_bids_;
  std::vector<std::pair<std::vector<int>, double>> rolls_;
};

}  // namespace

GamePtr make_liars_dice_game(int dice_per_player, int faces) {
  if (dice_per_player < 1 || faces < 2) {
    throw ConfigError("liars_dice requires d >= 1 and f >= 2");
  }
  if (2 * dice_per_player * faces > 14) {
    throw ConfigError("liars_dice bid space too large to enumerate (2*d*f must be <= 14)");
  }
  return std::make_shared<LiarsDiceGame>(dice_per_player, faces);
}

}  // namespace pscfr

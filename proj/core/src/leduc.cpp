#include <memory>

#include "pscfr/games.hpp"

namespace pscfr {

namespace {

constexpr int kFold = 0;
constexpr int kCheckCall = 1;
constexpr int kBet = 2;
constexpr int kRaise = 3;

// Six cards, two suits per rank. Rank = id / 2.
const char* kCardTokens[6] = {"Js", "Jh", "Qs", "Qh", "Ks", "Kh"};
constexpr int kNumCards = 6;
constexpr int kBetSize[2] = {2, 4};

bool round_over(const std::string& line) {
  return line == "cc" || line == "bc" || line == "brc" || line == "cbc" || line == "cbrc";
}

struct LeducWorld : World {
  int card1 = -1;
  int card2 = -1;
  int board = -1;
  int round = 0;
  std::string line;        // current round's betting line
  int invested[2] = {1, 1};  // antes included
  int folder = -1;
};

const LeducWorld& lw(const World& w) { return static_cast<const LeducWorld&>(w); }

bool is_board_chance(const LeducWorld& s) {
  return s.card1 >= 0 && s.folder < 0 && s.round == 0 && round_over(s.line) && s.board < 0;
}

class LeducGame : public Game {
 public:
  std::string name() const override { return "leduc"; }
  int num_players() const override { return 2; }
  WorldPtr initial_world() const override { return std::make_shared<LeducWorld>(); }

  bool is_terminal(const World& w) const override {
    const LeducWorld& s = lw(w);
    if (s.card1 < 0) return false;
    return s.folder >= 0 || (s.round == 1 && round_over(s.line));
  }

  std::vector<int> active_players(const World& w) const override {
    const LeducWorld& s = lw(w);
    if (s.card1 < 0 || is_terminal(w) || is_board_chance(s)) return {};
    return {static_cast<int>(s.line.size()) % 2};
  }

  std::vector<Action> legal_actions(const World& w, int player) const override {
    const LeducWorld& s = lw(w);
    PSCFR_CHECK(!active_players(w).empty() && active_players(w)[0] == player);
    const bool facing_bet = !s.line.empty() && (s.line.back() == 'b' || s.line.back() == 'r');
    if (!facing_bet) return {kCheckCall, kBet};
    const bool raise_open = s.line.back() == 'b';  // one raise per round
    if (raise_open) return {kFold, kCheckCall, kRaise};
    return {kFold, kCheckCall};
  }

  std::string action_token(int, Action a) const override {
    switch (a) {
      case kFold: return "f";
      case kCheckCall: return "c";
      case kBet: return "b";
      default: return "r";
    }
  }

  std::vector<Outcome> apply(const World& w, const JointAction& joint) const override {
    const LeducWorld& s = lw(w);
    if (s.card1 < 0) {
      PSCFR_CHECK(joint.empty());
      std::vector<Outcome> outcomes;
      for (int c1 = 0; c1 < kNumCards; ++c1) {
        for (int c2 = 0; c2 < kNumCards; ++c2) {
          if (c1 == c2) continue;
          Outcome o;
          auto next = std::make_shared<LeducWorld>();
          next->card1 = c1;
          next->card2 = c2;
          o.world = std::move(next);
          o.probability = 1.0 / (kNumCards * (kNumCards - 1));
          o.public_obs = kStartObs;
          o.private_obs = {kCardTokens[c1], kCardTokens[c2]};
          outcomes.push_back(std::move(o));
        }
      }
      return outcomes;
    }

    if (is_board_chance(s)) {
      PSCFR_CHECK(joint.empty());
      std::vector<Outcome> outcomes;
      for (int b = 0; b < kNumCards; ++b) {
        if (b == s.card1 || b == s.card2) continue;
        Outcome o;
        auto next = std::make_shared<LeducWorld>(s);
        next->board = b;
        next->round = 1;
        next->line.clear();
        o.world = std::move(next);
        o.probability = 1.0 / (kNumCards - 2);
        o.public_obs = kCardTokens[b];
        outcomes.push_back(std::move(o));
      }
      return outcomes;
    }

    PSCFR_CHECK(joint.size() == 1);
    const int actor = static_cast<int>(s.line.size()) % 2;
    const Action a = joint[0];
    auto next = std::make_shared<LeducWorld>(s);
    const int owed = s.invested[1 - actor] - s.invested[actor];
    switch (a) {
      case kFold: next->folder = actor; break;
      case kCheckCall: next->invested[actor] += owed; break;
      case kBet: next->invested[actor] += kBetSize[s.round]; break;
      case kRaise: next->invested[actor] += owed + kBetSize[s.round]; break;
      default: PSCFR_CHECK_MSG(false, "bad leduc action");
    }
    next->line.push_back(action_token(actor, a)[0]);

    Outcome o;
    o.public_obs = action_token(actor, a);
    if (is_terminal(*next)) o.rewards = terminal_utilities(*next);
    o.world = std::move(next);
    return {std::move(o)};
  }

 private:
  static std::vector<double> terminal_utilities(const LeducWorld& s) {
    if (s.folder >= 0) {
      const double lost = s.invested[s.folder];
      return s.folder == 0 ? std::vector<double>{-lost, lost} : std::vector<double>{lost, -lost};
    }
    const int winner = showdown_winner(s);
    if (winner < 0) return {0.0, 0.0};
    const double lost = s.invested[1 - winner];
    return winner == 0 ? std::vector<double>{lost, -lost} : std::vector<double>{-lost, lost};
  }

  // Pair with the board wins; otherwise higher rank; equal ranks chop (-1).
  static int showdown_winner(const LeducWorld& s) {
    const int r1 = s.card1 / 2;
    const int r2 = s.card2 / 2;
    const int rb = s.board / 2;
    if (r1 == rb) return 0;
    if (r2 == rb) return 1;
    if (r1 == r2) return -1;
    return r1 > r2 ? 0 : 1;
  }
};

}  // namespace

GamePtr make_leduc_game() { return std::make_shared<LeducGame>(); }

}  // namespace pscfr

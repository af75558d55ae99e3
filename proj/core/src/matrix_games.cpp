#include <algorithm>
#include <memory>
#include <numeric>

#include "pscfr/games.hpp"
#include "pscfr/sbg.hpp"

namespace pscfr {

namespace {

// Shared world for the small matrix-game family. stage counts transitions
// taken; a1/a2/book record realized choices.
struct MatrixWorld : World {
  int stage = 0;
  int book = -1;  // sb-form only: index of the code-book permutation
  int a1 = -1;
  int a2 = -1;
};

const MatrixWorld& mw(const World& w) { return static_cast<const MatrixWorld&>(w); }

std::vector<double> payoff_vector(const MatrixGame& m, int row, int col) {
  const double u = m.payoff[row][col];
  return {u, -u};
}

// Player 1 moves first and hidden, player 2 responds publicly.
// rps_efg and mp_seq; the root is player 1's decision (no chance prelude).
class SeqHiddenGame : public Game {
 public:
  SeqHiddenGame(std::string name, MatrixGame m) : name_(std::move(name)), m_(std::move(m)) {}

  std::string name() const override { return name_; }
  int num_players() const override { return 2; }
  WorldPtr initial_world() const override { return std::make_shared<MatrixWorld>(); }
  bool is_terminal(const World& w) const override { return mw(w).stage == 2; }

  std::vector<int> active_players(const World& w) const override {
    switch (mw(w).stage) {
      case 0: return {0};
      case 1: return {1};
      default: return {};
    }
  }

  std::vector<Action> legal_actions(const World& w, int player) const override {
    const int n = player == 0 ? m_.rows() : m_.cols();
    PSCFR_CHECK(mw(w).stage == player);
    std::vector<Action> actions(n);
    std::iota(actions.begin(), actions.end(), 0);
    return actions;
  }

  std::string action_token(int player, Action a) const override {
    return player == 0 ? m_.row_actions[a] : m_.col_actions[a];
  }

  std::vector<Outcome> apply(const World& w, const JointAction& joint) const override {
    const MatrixWorld& state = mw(w);
    PSCFR_CHECK(joint.size() == 1);
    Outcome o;
    auto next = std::make_shared<MatrixWorld>(state);
    if (state.stage == 0) {
      next->stage = 1;
      next->a1 = joint[0];
      o.public_obs = "m";  // the move itself stays hidden
    } else {
      next->stage = 2;
      next->a2 = joint[0];
      o.public_obs = m_.col_actions[joint[0]];
      o.rewards = payoff_vector(m_, state.a1, joint[0]);
    }
    o.world = std::move(next);
    return {std::move(o)};
  }

 private:
  std::string name_;
  MatrixGame m_;
};

// One simultaneous round; the terminal observation reveals the joint action.
class SimultaneousGame : public Game {
 public:
  SimultaneousGame(std::string name, MatrixGame m) : name_(std::move(name)), m_(std::move(m)) {}

  std::string name() const override { return name_; }
  int num_players() const override { return 2; }
  WorldPtr initial_world() const override { return std::make_shared<MatrixWorld>(); }
  bool is_terminal(const World& w) const override { return mw(w).stage == 1; }

  std::vector<int> active_players(const World& w) const override {
    return mw(w).stage == 0 ? std::vector<int>{0, 1} : std::vector<int>{};
  }

  std::vector<Action> legal_actions(const World&, int player) const override {
    const int n = player == 0 ? m_.rows() : m_.cols();
    std::vector<Action> actions(n);
    std::iota(actions.begin(), actions.end(), 0);
    return actions;
  }

  std::string action_token(int player, Action a) const override {
    return player == 0 ? m_.row_actions[a] : m_.col_actions[a];
  }

  std::vector<Outcome> apply(const World& w, const JointAction& joint) const override {
    PSCFR_CHECK(mw(w).stage == 0 && joint.size() == 2);
    Outcome o;
    auto next = std::make_shared<MatrixWorld>();
    next->stage = 1;
    next->a1 = joint[0];
    next->a2 = joint[1];
    o.world = std::move(next);
    o.public_obs = m_.row_actions[joint[0]] + m_.col_actions[joint[1]];
    o.rewards = payoff_vector(m_, joint[0], joint[1]);
    return {std::move(o)};
  }

 private:
  std::string name_;
  MatrixGame m_;
};

std::string code_letter(int k) {
  static const char* letters = "XYZW";
  if (k < 4) return std::string(1, letters[k]);
  return "E" + std::to_string(k);
}

// The code-book transform of a matrix game (see sb_transform in the header).
// stage 0: chance deals the book; stage 1: player 1 announces a code;
// stage 2: player 2 responds; stage 3: terminal.
class SbFormGame : public Game {
 public:
  explicit SbFormGame(MatrixGame m) : m_(std::move(m)) {
    std::vector<int> perm(m_.rows());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      books_.push_back(perm);  // books_[b][row] = code index announced for row
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::string name() const override { return m_.name + "_sb"; }
  int num_players() const override { return 2; }
  WorldPtr initial_world() const override { return std::make_shared<MatrixWorld>(); }
  bool is_terminal(const World& w) const override { return mw(w).stage == 3; }

  std::vector<int> active_players(const World& w) const override {
    switch (mw(w).stage) {
      case 1: return {0};
      case 2: return {1};
      default: return {};
    }
  }

  std::vector<Action> legal_actions(const World& w, int player) const override {
    const MatrixWorld& state = mw(w);
    PSCFR_CHECK((state.stage == 1 && player == 0) || (state.stage == 2 && player == 1));
    const int n = player == 0 ? m_.rows() : m_.cols();
    std::vector<Action> actions(n);
    std::iota(actions.begin(), actions.end(), 0);
    return actions;
  }

  std::string action_token(int player, Action a) const override {
    return player == 0 ? code_letter(a) : m_.col_actions[a];
  }

  std::vector<Outcome> apply(const World& w, const JointAction& joint) const override {
    const MatrixWorld& state = mw(w);
    std::vector<Outcome> outcomes;
    if (state.stage == 0) {
      PSCFR_CHECK(joint.empty());
      const double p = 1.0 / static_cast<double>(books_.size());
      for (std::size_t b = 0; b < books_.size(); ++b) {
        Outcome o;
        auto next = std::make_shared<MatrixWorld>();
        next->stage = 1;
        next->book = static_cast<int>(b);
        o.world = std::move(next);
        o.probability = p;
        o.public_obs = kStartObs;
        o.private_obs = {book_token(static_cast<int>(b)), ""};
        outcomes.push_back(std::move(o));
      }
      return outcomes;
    }
    PSCFR_CHECK(joint.size() == 1);
    Outcome o;
    auto next = std::make_shared<MatrixWorld>(state);
    if (state.stage == 1) {
      next->stage = 2;
      next->a1 = joint[0];  // the announced code
      o.public_obs = code_letter(joint[0]);
    } else {
      next->stage = 3;
      next->a2 = joint[0];
      o.public_obs = m_.col_actions[joint[0]];
      const int row = decode(state.book, state.a1);
      o.rewards = payoff_vector(m_, row, joint[0]);
    }
    o.world = std::move(next);
    outcomes.push_back(std::move(o));
    return outcomes;
  }

 private:
  std::string book_token(int b) const {
    std::string token;
    for (int row = 0; row < m_.rows(); ++row) token += code_letter(books_[b][row]);
    return token;
  }

  int decode(int book, int code) const {
    for (int row = 0; row < m_.rows(); ++row) {
      if (books_[book][row] == code) return row;
    }
    PSCFR_CHECK_MSG(false, "code not in book");
    return -1;
  }

  MatrixGame m_;
  std::vector<std::vector<int>> books_;
};

}  // namespace

MatrixGame matching_pennies_matrix() {
  // Player 1 hides a coin, player 2 guesses; a correct guess costs player 1.
  return MatrixGame{"mp", {"H", "T"}, {"H", "T"}, {{-1, 1}, {1, -1}}};
}

MatrixGame rps_matrix() {
  return MatrixGame{"rps", {"r", "p", "s"}, {"r", "p", "s"},
                    {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}};
}

GamePtr sb_transform(const MatrixGame& matrix) {
  PSCFR_CHECK_MSG(matrix.rows() >= 1 && matrix.cols() >= 1, "empty matrix game");
  PSCFR_CHECK_MSG(static_cast<int>(matrix.payoff.size()) == matrix.rows(),
                  "payoff row count mismatch");
  for (const auto& row : matrix.payoff) {
    PSCFR_CHECK_MSG(static_cast<int>(row.size()) == matrix.cols(), "payoff column count mismatch");
  }
  PSCFR_CHECK_MSG(matrix.rows() <= 5, "too many row actions for the code-book transform");
  return std::make_shared<SbFormGame>(matrix);
}

long long sb_code_book_count(const MatrixGame& matrix) {
  long long count = 1;
  for (int k = 2; k <= matrix.rows(); ++k) count *= k;
  return count;
}

GamePtr make_seq_hidden_game(const std::string& name, const MatrixGame& matrix) {
  return std::make_shared<SeqHiddenGame>(name, matrix);
}

GamePtr make_simultaneous_game(const std::string& name, const MatrixGame& matrix) {
  return std::make_shared<SimultaneousGame>(name, matrix);
}

}  // namespace pscfr

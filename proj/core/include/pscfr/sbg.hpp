#pragma once

#include <string>
#include <vector>

#include "pscfr/game.hpp"

namespace pscfr {

struct SbgCondition {
  bool passed = true;
  std::string witness;  // lexicographically smallest violating transition
};

// Verdict for the three defining conditions of a sequential Bayesian game:
//   (i)   no private observations apart from the initial randomisation,
//   (ii)  legal actions depend only on public information,
//   (iii) all player actions are publicly observable.
struct SbgReport {
  SbgCondition no_private_observations;   // (i)
  SbgCondition public_legal_actions;      // (ii)
  SbgCondition public_actions;            // (iii)

  bool is_sbg() const {
    return no_private_observations.passed && public_legal_actions.passed &&
           public_actions.passed;
  }
  std::string summary() const;
};

struct SbgCheckOptions {
  // Enumerate successors in reverse. The report is independent of traversal
  // order; the flag exists so tests can assert exactly that.
  bool reverse_traversal = false;
};

SbgReport check_sbg(const Game& game, const SbgCheckOptions& options = {});

// A two-player zero-sum matrix game; `payoff[r][c]` is player 1's payoff.
struct MatrixGame {
  std::string name;
  std::vector<std::string> row_actions;
  std::vector<std::string> col_actions;
  std::vector<std::vector<double>> payoff;

  int rows() const { return static_cast<int>(row_actions.size()); }
  int cols() const { return static_cast<int>(col_actions.size()); }
};

MatrixGame matching_pennies_matrix();
MatrixGame rps_matrix();

// Code-book rewrite of a one-round matrix game: chance privately deals player
// 1 a uniformly random bijection from their actions onto a public code
// alphabet, player 1 announces a code, player 2 responds, and utilities are
// scored on the decoded action pair. The result passes check_sbg and keeps
// the original game's value.
GamePtr sb_transform(const MatrixGame& matrix);

// Number of code books (bijections) sb_transform deals for this input.
long long sb_code_book_count(const MatrixGame& matrix);

}  // namespace pscfr

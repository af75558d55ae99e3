#pragma once

#include <string>
#include <vector>

#include "pscfr/cfr.hpp"
#include "pscfr/game.hpp"

namespace pscfr {

// Exact expected utilities of a behavioural profile (one Policy holding every
// player's infostates; missing infostates play uniform).
std::vector<double> expected_values(const Game& game, const Policy& profile);

struct BrResult {
  int player = 0;
  double value = 0.0;
  Policy policy;  // the pure best response on the player's decision infostates
};

// Exact best response by backward induction over the player's infostates,
// weighting histories by opponent and chance reach. Two-player games only.
BrResult best_response_value(const Game& game, const Policy& profile, int player);

// (BR_1 + BR_2) / 2 for two-player zero-sum games; 0 exactly at equilibrium.
double exploitability(const Game& game, const Policy& profile);

// Max over (infostate, action) of |a - b|; infostates present on one side
// only are compared against uniform.
double strategy_distance(const Policy& a, const Policy& b);

}  // namespace pscfr

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pscfr/common.hpp"

namespace pscfr {

// Opaque world state. Each game defines its own derived type; worlds only ever
// flow back into the game that created them.
class World {
 public:
  virtual ~World() = default;
};

using WorldPtr = std::shared_ptr<const World>;

// Per-player action id. Ids are game-local; tokens give them a stable name.
using Action = int;

// Joint action, aligned with active_players() order. Empty at chance states.
using JointAction = std::vector<Action>;

// Public observation emitted by the transition out of an inactive root.
inline constexpr const char* kStartObs = "start";

// One realized transition: next world, its probability under the joint action,
// the reward vector, and the factored observations. `public_obs` must be a
// nonempty token; empty private observations mean "player observed nothing".
// Observation and action tokens are ASCII without '/', '|' or whitespace.
struct Outcome {
  WorldPtr world;
  double probability = 1.0;
  std::vector<double> rewards;             // one per player; empty = all zero
  std::vector<std::string> private_obs;    // one per player; empty = all none
  std::string public_obs;
};

// A factored-observation stochastic game. Implementations are immutable after
// construction and safe to share across concurrent readers; traversal state
// lives entirely in History and the solvers.
class Game {
 public:
  virtual ~Game() = default;

  virtual std::string name() const = 0;
  virtual int num_players() const = 0;
  virtual WorldPtr initial_world() const = 0;

  virtual bool is_terminal(const World& w) const = 0;
  // Acting players at w, ascending. Empty both at chance states and terminals.
  virtual std::vector<int> active_players(const World& w) const = 0;
  // Nonempty for active players at non-terminal worlds.
  virtual std::vector<Action> legal_actions(const World& w, int player) const = 0;
  virtual std::string action_token(int player, Action a) const = 0;
  // Realizes the transition/reward/observation functions for one joint action.
  // Outcome probabilities must sum to 1 within 1e-12.
  virtual std::vector<Outcome> apply(const World& w, const JointAction& joint) const = 0;
};

using GamePtr = std::shared_ptr<const Game>;

}  // namespace pscfr

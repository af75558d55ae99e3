#pragma once

#include <string>
#include <vector>

#include "pscfr/history.hpp"

namespace pscfr {

// Dense row-major matrix of chance-weighted utilities at a terminal public
// state. Rows are indexed by the owning player's private infostates, columns
// by the opponent's. Cells whose private-infostate profile matches no history
// (e.g. shared cards) stay at 0 and are marked invalid.
struct ChwuMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;
  std::vector<char> valid;  // 1 iff some terminal history realizes the profile

  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  bool is_valid(int r, int c) const { return valid[static_cast<std::size_t>(r) * cols + c] != 0; }
};

// One private infostate s'_i compatible with a public state. `parent` points
// at the private infostate it extends at the parent public state;
// `parent_action` is the index into that infostate's action list when the
// player acted on the way here, -1 when the extension was a pass-through
// (someone else acted, or chance moved).
struct PrivateInfostate {
  std::string seq_key;        // private tokens joined by '/'
  std::string infostate_key;  // full canonical key at this public state
  std::vector<Action> actions;
  std::vector<std::string> action_tokens;
  int parent = -1;
  int parent_action = -1;
};

struct PublicState {
  int index = 0;
  int parent = -1;
  bool terminal = false;
  std::string pub_key;  // public tokens joined by '/'; "" at the root
  std::vector<int> children;
  std::vector<std::vector<PrivateInfostate>> privs;  // [player][k]
  long long num_histories = 0;
  // Terminal public states only: one matrix per player, both built directly
  // from the game's reward vectors (chwu[1] is indexed (s'_2, s'_1)).
  std::vector<ChwuMatrix> chwu;
};

struct PublicTree {
  GamePtr game;
  std::vector<PublicState> nodes;  // nodes[0] is the root

  const PublicState& root() const { return nodes.front(); }
  std::size_t size() const { return nodes.size(); }
};

// Groups the game's histories by public observation sequence, links private
// infostates across levels, and fills in the chance-weighted utility matrices
// of every terminal public state (two-player games only for the latter).
PublicTree build_public_tree(GamePtr game);

// Per-player chance-weighted utility matrices of one terminal public state.
// Throws ContractError on a non-terminal node.
const std::vector<ChwuMatrix>& chwu_matrices(const PublicState& node);

struct GameCounts {
  int num_players = 0;
  long long histories = 0;
  long long terminal_histories = 0;
  std::vector<long long> infostates;           // all distinct (s'_i, s_pub) per player
  std::vector<long long> decision_infostates;  // infostates where the player acts
  long long public_states = 0;
  long long terminal_public_states = 0;
  long long max_privates_per_public = 0;
  // Per-iteration terminal work of public-state traversals:
  long long sum_terminal_priv_products = 0;  // sum over terminal s_pub of |S'_1| * |S'_2|
  long long sum_terminal_priv_sums = 0;      // sum over terminal s_pub of |S'_1| + |S'_2|

  long long infostates_total() const;
  long long decision_infostates_total() const;
};

// Exhaustive enumeration of the history tree. Maintains its own grouping maps
// and is intentionally independent of build_public_tree so the two can
// cross-check each other.
GameCounts enumerate_counts(const Game& game);

}  // namespace pscfr

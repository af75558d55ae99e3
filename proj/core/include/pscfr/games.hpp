#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "pscfr/game.hpp"

namespace pscfr {

// Playing card. rank 0..12 maps to 2..A, suit 0..3 to c,d,h,s.
struct Card {
  int rank = 0;
  int suit = 0;

  int id() const { return rank * 4 + suit; }
  std::string token() const;
  static Card from_id(int id) { return Card{id / 4, id % 4}; }
  static Card parse(std::string_view token);
  bool operator==(const Card&) const = default;
  auto operator<=>(const Card& other) const { return id() <=> other.id(); }
};

// River subgame configuration. `deck` holds the dealable private cards; the
// five board cards are fixed and disjoint from it. With hand_size 1 the board
// is scenery and hands rank purely by deck position; with hand_size 2 the
// standard best-five-of-seven evaluation applies.
struct RiverConfig {
  std::vector<Card> deck;
  std::array<Card, 5> board;
  int hand_size = 1;
  int pot = 200;    // chips already committed, split evenly between the players
  int stack = 1000; // per-player total commitment cap, pot share included
  std::string abstraction = "fcpa";  // subset of f,c,p,a; must contain f and c

  long long num_deals() const;
};

RiverConfig make_river_config(int deck_size, int hand_size, int pot, int stack,
                              const std::string& abstraction);

// Total-order strength of a private hand against the fixed board.
struct HandRank {
  long long value = 0;
  auto operator<=>(const HandRank&) const = default;
};

// Throws ContractError when the hand intersects the board.
HandRank hand_rank(const RiverConfig& config, const std::vector<Card>& hand);

// Parsed game identifier. Grammar:
//   kuhn | leduc | rps_efg | rps_nfg | mp_seq | mp_sb
//   | liars_dice:d=<int>,f=<int>
//   | river:deck=<int>,hand=<1|2>,pot=<int>,stack=<int>,abs=<subset of f,c,p,a>
struct GameSpec {
  std::string id;
  std::map<std::string, std::string> params;

  // Throws SpecError with the offending position on malformed input.
  static GameSpec parse(const std::string& text);
  std::string render() const;
  bool operator==(const GameSpec&) const = default;
};

// Instantiates a zoo game. Throws ConfigError on infeasible parameters.
GamePtr make_game(const GameSpec& spec);
GamePtr make_game(const std::string& spec_text);

// nullptr unless the game is a river subgame.
const RiverConfig* river_config_of(const Game& game);

// Factories used by make_game; exposed for tests that build variants directly.
GamePtr make_kuhn_game();
GamePtr make_leduc_game();
GamePtr make_liars_dice_game(int dice_per_player, int faces);
GamePtr make_river_game(const RiverConfig& config);

struct MatrixGame;
GamePtr make_seq_hidden_game(const std::string& name, const MatrixGame& matrix);
GamePtr make_simultaneous_game(const std::string& name, const MatrixGame& matrix);

}  // namespace pscfr

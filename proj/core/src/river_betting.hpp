#pragma once

#include <string>
#include <vector>

#include "pscfr/games.hpp"

namespace pscfr::river_detail {

// Single-street betting under the (fold, call, pot, all-in) abstraction.
// `invested` is street money only; each player's total commitment is capped at
// stack, with pot/2 already committed before the street. A pot-sized raise
// puts in pot + 2*owed (call plus a raise of the pot after the call) and
// collapses to all-in when it would meet or exceed the remaining stack.
struct BettingState {
  enum class Status { acting, fold_end, showdown_end };

  int pot = 0;  // chips committed before the street, split evenly
  int cap = 0;  // per-player street budget: stack - pot/2
  std::string abstraction;
  int invested[2] = {0, 0};
  int to_act = 0;
  Status status = Status::acting;
  int folder = -1;

  static BettingState start(const RiverConfig& config) {
    BettingState s;
    s.pot = config.pot;
    s.cap = config.stack - config.pot / 2;
    s.abstraction = config.abstraction;
    return s;
  }

  bool has(char action) const { return abstraction.find(action) != std::string::npos; }
  int owed() const { return invested[1 - to_act] - invested[to_act]; }
  int pot_total() const { return pot + invested[0] + invested[1]; }
  int available() const { return cap - invested[to_act]; }
  int pot_raise_amount() const { return pot_total() + 2 * owed(); }

  // Legal action characters in canonical f,c,p,a order.
  std::vector<char> legal() const {
    std::vector<char> out;
    if (owed() > 0 && has('f')) out.push_back('f');
    out.push_back('c');
    if (has('p') && pot_raise_amount() < available()) out.push_back('p');
    if (has('a') && available() > owed()) out.push_back('a');
    return out;
  }

  void apply(char action) {
    switch (action) {
      case 'f':
        folder = to_act;
        status = Status::fold_end;
        return;
      case 'c': {
        const int call = owed();
        invested[to_act] += call;
        // The street ends on a call, or once both players have checked.
        if (call > 0 || to_act == 1) {
          status = Status::showdown_end;
        } else {
          to_act = 1;
        }
        return;
      }
      case 'p':
        invested[to_act] += pot_raise_amount();
        to_act = 1 - to_act;
        return;
      case 'a':
        invested[to_act] += available();
        to_act = 1 - to_act;
        return;
      default:
        throw ContractError("bad betting action");
    }
  }

  double contribution(int player) const { return pot / 2.0 + invested[player]; }
};

// Replays a public betting line (tokens after the deal observation).
inline BettingState replay(const RiverConfig& config, const std::vector<std::string>& tokens) {
  BettingState s = BettingState::start(config);
  for (const std::string& t : tokens) {
    if (s.status != BettingState::Status::acting || t.size() != 1) {
      throw ContractError("bad betting line");
    }
    s.apply(t[0]);
  }
  return s;
}

}  // namespace pscfr::river_detail

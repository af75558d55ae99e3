#include <algorithm>
#include <array>

#include "pscfr/games.hpp"

namespace pscfr {

namespace {

// Category-major 5-card score; higher wins. Tiebreak ranks are packed in
// nibbles ordered by (multiplicity, rank) descending.
long long score_five(std::array<Card, 5> cards) {
  std::array<int, 13> count{};
  int suit_mask = 0;
  for (const Card& c : cards) {
    ++count[c.rank];
    suit_mask |= 1 << c.suit;
  }
  const bool flush = (suit_mask & (suit_mask - 1)) == 0;

  std::array<int, 13> present{};
  for (int r = 0; r < 13; ++r) present[r] = count[r] > 0;
  int straight_high = -1;
  for (int high = 12; high >= 4; --high) {
    bool run = true;
    for (int k = 0; k < 5; ++k) run = run && present[high - k];
    if (run) {
      straight_high = high;
      break;
    }
  }
  // Wheel: A,2,3,4,5 plays as a five-high straight.
  if (straight_high < 0 && present[12] && present[0] && present[1] && present[2] && present[3]) {
    straight_high = 3;
  }

  std::vector<std::pair<int, int>> groups;  // (multiplicity, rank)
  for (int r = 12; r >= 0; --r) {
    if (count[r] > 0) groups.emplace_back(count[r], r);
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  int category;
  if (flush && straight_high >= 0) category = 8;
  else if (groups[0].first == 4) category = 7;
  else if (groups[0].first == 3 && groups.size() >= 2 && groups[1].first == 2) category = 6;
  else if (flush) category = 5;
  else if (straight_high >= 0) category = 4;
  else if (groups[0].first == 3) category = 3;
  else if (groups[0].first == 2 && groups[1].first == 2) category = 2;
  else if (groups[0].first == 2) category = 1;
  else category = 0;

  long long tiebreak = 0;
  if (category == 4 || category == 8) {
    tiebreak = straight_high;
  } else {
    for (const auto& [mult, rank] : groups) {
      for (int k = 0; k < mult; ++k) tiebreak = (tiebreak << 4) | rank;
    }
  }
  return (static_cast<long long>(category) << 24) | tiebreak;
}

}  // namespace

HandRank hand_rank(const RiverConfig& config, const std::vector<Card>& hand) {
  PSCFR_CHECK_MSG(static_cast<int>(hand.size()) == config.hand_size, "hand size mismatch");
  for (const Card& c : hand) {
    for (const Card& b : config.board) {
      PSCFR_CHECK_MSG(!(c == b), "hand intersects the board");
    }
  }

  if (config.hand_size == 1) {
    // Desk-scale variant: pure high card by deck position, no board pairing.
    for (std::size_t i = 0; i < config.deck.size(); ++i) {
      if (config.deck[i] == hand[0]) return HandRank{static_cast<long long>(i)};
    }
    throw ContractError("hand card not in the deck");
  }

  std::array<Card, 7> seven;
  std::copy(config.board.begin(), config.board.end(), seven.begin());
  seven[5] = hand[0];
  seven[6] = hand[1];

  long long best = 0;
  for (int skip1 = 0; skip1 < 7; ++skip1) {
    for (int skip2 = skip1 + 1; skip2 < 7; ++skip2) {
      std::array<Card, 5> five;
      int n = 0;
      for (int k = 0; k < 7; ++k) {
        if (k != skip1 && k != skip2) five[n++] = seven[k];
      }
      best = std::max(best, score_five(five));
    }
  }
  return HandRank{best};
}

}  // namespace pscfr

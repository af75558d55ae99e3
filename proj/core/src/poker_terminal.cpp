#include <algorithm>
#include <map>

#include "pscfr/cfr.hpp"
#include "pscfr/games.hpp"
#include "river_betting.hpp"

namespace pscfr {

namespace {

std::vector<Card> parse_hand_token(const std::string& token) {
  PSCFR_CHECK_MSG(token.size() % 2 == 0 && !token.empty(), "bad hand token");
  std::vector<Card> cards;
  for (std::size_t k = 0; k < token.size(); k += 2) {
    cards.push_back(Card::parse(std::string_view(token).substr(k, 2)));
  }
  return cards;
}

}  // namespace

PokerTerminalInfo classify_poker_terminal(const Game& game, const PublicState& node) {
  const RiverConfig* config = river_config_of(game);
  if (config == nullptr) {
    throw ConfigError("the poker terminal evaluation requires a river game");
  }
  PSCFR_CHECK_MSG(node.terminal, "classify_poker_terminal on a non-terminal public state");

  const std::vector<std::string> tokens = split(node.pub_key, '/');
  PSCFR_CHECK_MSG(!tokens.empty() && tokens[0] == kStartObs, "unexpected river public line");
  river_detail::BettingState end = river_detail::replay(
      *config, std::vector<std::string>(tokens.begin() + 1, tokens.end()));
  PSCFR_CHECK(end.status != river_detail::BettingState::Status::acting);

  PokerTerminalInfo info;
  if (end.status == river_detail::BettingState::Status::fold_end) {
    info.kind = PokerTerminalInfo::Kind::fold;
    info.folder = end.folder;
    info.stake = end.contribution(end.folder);
  } else {
    info.kind = PokerTerminalInfo::Kind::showdown;
    PSCFR_CHECK(end.invested[0] == end.invested[1]);
    info.stake = end.contribution(0);
  }
  info.chance_const = 1.0 / static_cast<double>(config->num_deals());
  info.hand_size = config->hand_size;

  std::map<int, int> dense_cards;
  std::map<long long, int> group_of_rank;
  std::vector<std::vector<long long>> raw_ranks(2);
  std::map<std::vector<int>, int> hand_index[2];  // sorted card ids -> priv index
  info.hands.assign(2, {});
  for (int i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < node.privs[i].size(); ++k) {
      const std::vector<std::string> priv_tokens = split(node.privs[i][k].seq_key, '/');
      PSCFR_CHECK(!priv_tokens.empty());
      const std::vector<Card> cards = parse_hand_token(priv_tokens.front());
      PokerTerminalInfo::Hand hand;
      std::vector<int> ids;
      for (const Card& c : cards) {
        auto [it, inserted] = dense_cards.try_emplace(c.id(), static_cast<int>(dense_cards.size()));
        hand.cards.push_back(it->second);
        ids.push_back(c.id());
      }
      std::sort(ids.begin(), ids.end());
      hand_index[i].emplace(ids, static_cast<int>(k));
      raw_ranks[i].push_back(hand_rank(*config, cards).value);
      group_of_rank.emplace(raw_ranks[i].back(), 0);
      info.hands[i].push_back(std::move(hand));
    }
  }
  int next_group = 0;
  for (auto& [rank, group] : group_of_rank) group = next_group++;
  info.num_rank_groups = next_group;
  info.num_cards = static_cast<int>(dense_cards.size());

  info.by_rank.assign(2, {});
  for (int i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < info.hands[i].size(); ++k) {
      info.hands[i][k].rank_group = group_of_rank.at(raw_ranks[i][k]);
      info.by_rank[i].push_back(static_cast<int>(k));
    }
    std::stable_sort(info.by_rank[i].begin(), info.by_rank[i].end(),
                     [&](int a, int b) {
                       return info.hands[i][a].rank_group < info.hands[i][b].rank_group;
                     });
  }

  for (int i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < node.privs[i].size(); ++k) {
      const std::vector<std::string> priv_tokens = split(node.privs[i][k].seq_key, '/');
      std::vector<int> ids;
      for (const Card& c : parse_hand_token(priv_tokens.front())) ids.push_back(c.id());
      std::sort(ids.begin(), ids.end());
      auto it = hand_index[1 - i].find(ids);
      if (it != hand_index[1 - i].end()) info.hands[i][k].opp_same = it->second;
    }
  }
  return info;
}

namespace {

thread_local std::vector<double> tls_card_mass;
thread_local std::vector<double> tls_weaker;
thread_local std::vector<double> tls_group_mass;

double card_mass(const std::vector<double>& mass, const PokerTerminalInfo::Hand& hand) {
  double total = 0.0;
  for (int c : hand.cards) total += mass[c];
  return total;
}

// Fold evaluation for one player: scale times the opponent reach mass that
// does not conflict with each of the player's hands.
void eval_fold_side(const PokerTerminalInfo& info, int me, double scale,
                    std::span<const double> opp_reach, std::span<double> values,
                    Counters& counters) {
  const auto& my_hands = info.hands[me];
  const auto& opp_hands = info.hands[1 - me];
  const bool blockers = info.hand_size == 2;
  std::vector<double>& card = tls_card_mass;
  if (blockers) card.assign(info.num_cards, 0.0);
  double total = 0.0;
  for (std::size_t y = 0; y < opp_hands.size(); ++y) {
    total += opp_reach[y];
    if (blockers) {
      for (int c : opp_hands[y].cards) card[c] += opp_reach[y];
    }
    ++counters.terminal_eval_ops;
  }
  for (std::size_t x = 0; x < my_hands.size(); ++x) {
    double conflict = 0.0;
    if (blockers) {
      // Inclusion-exclusion over the two cards; the identical hand is counted
      // once per card, so add it back once.
      conflict = card_mass(card, my_hands[x]);
      if (my_hands[x].opp_same >= 0) conflict -= opp_reach[my_hands[x].opp_same];
    } else if (my_hands[x].opp_same >= 0) {
      conflict = opp_reach[my_hands[x].opp_same];
    }
    values[x] += scale * (total - conflict);
    ++counters.terminal_eval_ops;
  }
}

// One-card showdown: no hand can block another (sharing the card means the
// tie cell), so weaker-minus-stronger mass reduces to prefix sums over the
// shared rank groups.
void eval_showdown_side_high_card(const PokerTerminalInfo& info, int me, double scale,
                                  std::span<const double> opp_reach, std::span<double> values,
                                  Counters& counters) {
  const auto& my_hands = info.hands[me];
  const auto& opp_hands = info.hands[1 - me];
  std::vector<double>& group = tls_group_mass;
  group.assign(info.num_rank_groups + 1, 0.0);
  double total = 0.0;
  for (std::size_t y = 0; y < opp_hands.size(); ++y) {
    group[opp_hands[y].rank_group + 1] += opp_reach[y];
    total += opp_reach[y];
    ++counters.terminal_eval_ops;
  }
  // group[g] becomes the mass strictly below rank group g.
  for (int g = 1; g <= info.num_rank_groups; ++g) {
    group[g] += group[g - 1];
    ++counters.terminal_eval_ops;
  }
  for (std::size_t x = 0; x < my_hands.size(); ++x) {
    const int g = my_hands[x].rank_group;
    const double weaker = group[g];
    const double stronger = total - group[g + 1];
    values[x] += scale * (weaker - stronger);
    ++counters.terminal_eval_ops;
  }
}

// Showdown evaluation for one player: sweep the shared rank order once up and
// once down, accumulating non-conflicting weaker and stronger reach mass.
// Ties share a rank group and contribute to neither side.
void eval_showdown_side(const PokerTerminalInfo& info, int me, double scale,
                        std::span<const double> opp_reach, std::span<double> values,
                        Counters& counters) {
  if (info.hand_size == 1) {
    eval_showdown_side_high_card(info, me, scale, opp_reach, values, counters);
    return;
  }
  const auto& my_hands = info.hands[me];
  const auto& opp_hands = info.hands[1 - me];
  const auto& my_order = info.by_rank[me];
  const auto& opp_order = info.by_rank[1 - me];
  const bool blockers = true;
  std::vector<double>& card = tls_card_mass;
  std::vector<double>& weaker = tls_weaker;
  weaker.assign(my_hands.size(), 0.0);

  if (blockers) card.assign(info.num_cards, 0.0);
  double mass = 0.0;
  std::size_t im = 0;
  std::size_t io = 0;
  for (int g = 0; g < info.num_rank_groups; ++g) {
    for (; im < my_order.size() && my_hands[my_order[im]].rank_group == g; ++im) {
      const int x = my_order[im];
      weaker[x] = blockers ? mass - card_mass(card, my_hands[x]) : mass;
      ++counters.terminal_eval_ops;
    }
    for (; io < opp_order.size() && opp_hands[opp_order[io]].rank_group == g; ++io) {
      const int y = opp_order[io];
      mass += opp_reach[y];
      if (blockers) {
        for (int c : opp_hands[y].cards) card[c] += opp_reach[y];
      }
      ++counters.terminal_eval_ops;
    }
  }

  if (blockers) card.assign(info.num_cards, 0.0);
  mass = 0.0;
  im = my_order.size();
  io = opp_order.size();
  for (int g = info.num_rank_groups - 1; g >= 0; --g) {
    for (; im > 0 && my_hands[my_order[im - 1]].rank_group == g; --im) {
      const int x = my_order[im - 1];
      const double stronger = blockers ? mass - card_mass(card, my_hands[x]) : mass;
      values[x] += scale * (weaker[x] - stronger);
      ++counters.terminal_eval_ops;
    }
    for (; io > 0 && opp_hands[opp_order[io - 1]].rank_group == g; --io) {
      const int y = opp_order[io - 1];
      mass += opp_reach[y];
      if (blockers) {
        for (int c : opp_hands[y].cards) card[c] += opp_reach[y];
      }
      ++counters.terminal_eval_ops;
    }
  }
}

}  // namespace

void terminal_eval_poker_linear(const PokerTerminalInfo& info, std::span<const double> reach1,
                                std::span<const double> reach2, std::span<double> values1,
                                std::span<double> values2, Counters& counters) {
  PSCFR_CHECK(reach1.size() == info.hands[0].size() && reach2.size() == info.hands[1].size());
  PSCFR_CHECK(values1.size() == reach1.size() && values2.size() == reach2.size());

  if (info.kind == PokerTerminalInfo::Kind::fold) {
    const double base = info.chance_const * info.stake;
    const double sign1 = info.folder == 0 ? -1.0 : 1.0;
    eval_fold_side(info, 0, sign1 * base, reach2, values1, counters);
    eval_fold_side(info, 1, -sign1 * base, reach1, values2, counters);
  } else {
    const double base = info.chance_const * info.stake;
    eval_showdown_side(info, 0, base, reach2, values1, counters);
    eval_showdown_side(info, 1, base, reach1, values2, counters);
  }
  counters.infostate_value_updates +=
      static_cast<std::uint64_t>(reach1.size()) + reach2.size();
}

}  // namespace pscfr

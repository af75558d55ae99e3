#include <algorithm>
#include <cctype>
#include <cstring>

#include "pscfr/games.hpp"
#include "pscfr/sbg.hpp"

namespace pscfr {

namespace {

constexpr const char* kRankChars = "23456789TJQKA";
constexpr const char* kSuitChars = "cdhs";

// Board used by every river subgame.
const std::array<Card, 5> kRiverBoard = {Card::parse("9s"), Card::parse("7c"), Card::parse("5s"),
                                         Card::parse("4h"), Card::parse("3c")};

bool is_ident_char(char c) { return std::islower(static_cast<unsigned char>(c)) || c == '_'; }

long long parse_int(const std::string& text, std::size_t position_base) {
  if (text.empty()) throw SpecError("expected an integer", position_base);
  long long value = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw SpecError("expected an integer", position_base + k);
    }
    value = value * 10 + (text[k] - '0');
    if (value > 1000000000LL) throw SpecError("integer out of range", position_base + k);
  }
  return value;
}

long long require_int_param(const GameSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw ConfigError(spec.id + " requires parameter '" + key + "'");
  }
  return parse_int(it->second, 0);
}

void require_params(const GameSpec& spec, const std::vector<std::string>& keys) {
  for (const auto& [key, value] : spec.params) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(spec.id + " does not take parameter '" + key + "'");
    }
  }
  for (const std::string& key : keys) {
    if (!spec.params.count(key)) throw ConfigError(spec.id + " requires parameter '" + key + "'");
  }
}

}  // namespace

std::string Card::token() const {
  std::string t;
  t.push_back(kRankChars[rank]);
  t.push_back(kSuitChars[suit]);
  return t;
}

Card Card::parse(std::string_view token) {
  PSCFR_CHECK_MSG(token.size() == 2, "card token must be rank char + suit char");
  const char* rank_pos = strchr(kRankChars, token[0]);
  const char* suit_pos = strchr(kSuitChars, token[1]);
  PSCFR_CHECK_MSG(rank_pos != nullptr && *rank_pos != '\0', "bad card rank");
  PSCFR_CHECK_MSG(suit_pos != nullptr && *suit_pos != '\0', "bad card suit");
  return Card{static_cast<int>(rank_pos - kRankChars), static_cast<int>(suit_pos - kSuitChars)};
}

GameSpec GameSpec::parse(const std::string& text) {
  GameSpec spec;
  std::size_t pos = 0;
  while (pos < text.size() && is_ident_char(text[pos])) ++pos;
  if (pos == 0) throw SpecError("expected a game identifier", 0);
  spec.id = text.substr(0, pos);
  if (pos == text.size()) return spec;
  if (text[pos] != ':') throw SpecError("expected ':' before parameters", pos);
  ++pos;
  while (true) {
    std::size_t key_start = pos;
    while (pos < text.size() && is_ident_char(text[pos])) ++pos;
    if (pos == key_start) throw SpecError("expected a parameter name", pos);
    const std::string key = text.substr(key_start, pos - key_start);
    if (pos == text.size() || text[pos] != '=') throw SpecError("expected '='", pos);
    ++pos;
    std::size_t value_start = pos;
    while (pos < text.size() && text[pos] != ',') ++pos;
    if (pos == value_start) throw SpecError("expected a parameter value", value_start);
    if (!spec.params.emplace(key, text.substr(value_start, pos - value_start)).second) {
      throw SpecError("duplicate parameter '" + key + "'", key_start);
    }
    if (pos == text.size()) break;
    ++pos;  // skip ','
    if (pos == text.size()) throw SpecError("trailing ','", pos - 1);
  }
  return spec;
}

std::string GameSpec::render() const {
  if (params.empty()) return id;
  std::string out = id + ":";
  // Canonical parameter orders per game family, alphabetical otherwise.
  std::vector<std::string> order;
  if (id == "river") order = {"deck", "hand", "pot", "stack", "abs"};
  else if (id == "liars_dice") order = {"d", "f"};
  else for (const auto& [key, value] : params) order.push_back(key);

  bool first = true;
  for (const std::string& key : order) {
    auto it = params.find(key);
    if (it == params.end()) continue;
    if (!first) out.push_back(',');
    out += key + "=" + it->second;
    first = false;
  }
  return out;
}

RiverConfig make_river_config(int deck_size, int hand_size, int pot, int stack,
                              const std::string& abstraction) {
  RiverConfig config;
  config.board = kRiverBoard;
  config.hand_size = hand_size;
  config.pot = pot;
  config.stack = stack;

  if (hand_size != 1 && hand_size != 2) throw ConfigError("river hand size must be 1 or 2");
  if (pot < 2 || pot % 2 != 0) throw ConfigError("river pot must be a positive even chip count");
  if (stack <= pot / 2) throw ConfigError("river stack must exceed the pot share");
  if (deck_size < 2 * hand_size + 1) throw ConfigError("river deck too small for two hands");
  if (deck_size > 47) throw ConfigError("river deck exceeds the 47 non-board cards");

  std::string canonical;
  for (char c : std::string("fcpa")) {
    if (abstraction.find(c) != std::string::npos) canonical.push_back(c);
  }
  for (char c : abstraction) {
    if (std::string("fcpa").find(c) == std::string::npos) {
      throw ConfigError(std::string("unknown river action '") + c + "' in abstraction");
    }
  }
  if (canonical.find('f') == std::string::npos || canonical.find('c') == std::string::npos) {
    throw ConfigError("river abstraction must contain fold and call");
  }
  config.abstraction = canonical;

  for (int id = 0; id < 52 && static_cast<int>(config.deck.size()) < deck_size; ++id) {
    const Card card = Card::from_id(id);
    bool on_board = false;
    for (const Card& b : config.board) on_board = on_board || card == b;
    if (!on_board) config.deck.push_back(card);
  }
  return config;
}

GamePtr make_game(const GameSpec& spec) {
  if (spec.id == "kuhn") {
    require_params(spec, {});
    return make_kuhn_game();
  }
  if (spec.id == "leduc") {
    require_params(spec, {});
    return make_leduc_game();
  }
  if (spec.id == "rps_efg") {
    require_params(spec, {});
    return make_seq_hidden_game("rps_efg", rps_matrix());
  }
  if (spec.id == "rps_nfg") {
    require_params(spec, {});
    return make_simultaneous_game("rps_nfg", rps_matrix());
  }
  if (spec.id == "mp_seq") {
    require_params(spec, {});
    return make_seq_hidden_game("mp_seq", matching_pennies_matrix());
  }
  if (spec.id == "mp_sb") {
    require_params(spec, {});
    return sb_transform(matching_pennies_matrix());
  }
  if (spec.id == "liars_dice") {
    require_params(spec, {"d", "f"});
    return make_liars_dice_game(static_cast<int>(require_int_param(spec, "d")),
                                static_cast<int>(require_int_param(spec, "f")));
  }
  if (spec.id == "river") {
    require_params(spec, {"deck", "hand", "pot", "stack", "abs"});
    return make_river_game(make_river_config(
        static_cast<int>(require_int_param(spec, "deck")),
        static_cast<int>(require_int_param(spec, "hand")),
        static_cast<int>(require_int_param(spec, "pot")),
        static_cast<int>(require_int_param(spec, "stack")), spec.params.at("abs")));
  }
  throw ConfigError("unknown game '" + spec.id + "'");
}

GamePtr make_game(const std::string& spec_text) { return make_game(GameSpec::parse(spec_text)); }

}  // namespace pscfr

#include "pscfr/public_tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>

namespace pscfr {

namespace {

constexpr int kMaxDepth = 10000;  // guards against non-terminating games

// How one child history's private infostates decompose at the parent node.
struct HistoryLink {
  std::vector<int> parent_priv;    // per player
  std::vector<int> parent_action;  // per player, -1 = pass-through
};

struct WorkItem {
  int node_index = 0;
  std::vector<std::string> public_seq;
  std::vector<History> histories;
  std::vector<HistoryLink> links;  // aligned with histories; empty at the root
};

int intern_private(PublicState& node, int player, const History& h,
                   std::unordered_map<std::string, int>& index, bool* inserted) {
  const std::string seq_key = join(h.private_seq(player), '/');
  auto it = index.find(seq_key);
  if (it != index.end()) {
    *inserted = false;
    return it->second;
  }

  PrivateInfostate priv;
  priv.seq_key = seq_key;
  priv.infostate_key = h.infostate_key(player);
  if (!h.is_terminal()) {
    const std::vector<int> actors = h.active_players();
    if (std::find(actors.begin(), actors.end(), player) != actors.end()) {
      priv.actions = h.legal_actions(player);
      for (Action a : priv.actions) priv.action_tokens.push_back(h.action_token(player, a));
    }
  }
  const int id = static_cast<int>(node.privs[player].size());
  node.privs[player].push_back(std::move(priv));
  index.emplace(seq_key, id);
  *inserted = true;
  return id;
}

}  // namespace

const std::vector<ChwuMatrix>& chwu_matrices(const PublicState& node) {
  PSCFR_CHECK_MSG(node.terminal, "chwu_matrices() on a non-terminal public state");
  return node.chwu;
}

PublicTree build_public_tree(GamePtr game) {
  PSCFR_CHECK(game != nullptr);
  const int num_players = game->num_players();

  PublicTree tree;
  tree.game = game;
  tree.nodes.emplace_back();

  std::vector<WorkItem> stack;
  {
    WorkItem root_item;
    root_item.node_index = 0;
    root_item.histories.push_back(History::root(game));
    stack.push_back(std::move(root_item));
  }

  while (!stack.empty()) {
    WorkItem item = std::move(stack.back());
    stack.pop_back();
    PSCFR_CHECK(static_cast<int>(item.public_seq.size()) <= kMaxDepth);

    // Nodes are appended while processing; never hold references across that.
    const int node_index = item.node_index;
    tree.nodes[node_index].index = node_index;
    tree.nodes[node_index].pub_key = join(item.public_seq, '/');
    tree.nodes[node_index].num_histories = static_cast<long long>(item.histories.size());
    tree.nodes[node_index].privs.assign(num_players, {});

    const bool terminal = item.histories.front().is_terminal();
    for (const History& h : item.histories) {
      PSCFR_CHECK_MSG(h.is_terminal() == terminal,
                      "public state mixes terminal and non-terminal histories");
    }
    tree.nodes[node_index].terminal = terminal;

    PublicState& node = tree.nodes[node_index];
    std::vector<std::unordered_map<std::string, int>> priv_index(num_players);
    std::vector<std::vector<int>> history_priv(item.histories.size(),
                                               std::vector<int>(num_players, -1));
    for (std::size_t hi = 0; hi < item.histories.size(); ++hi) {
      const History& h = item.histories[hi];
      const std::vector<int> actors = h.active_players();
      for (int i = 0; i < num_players; ++i) {
        bool inserted = false;
        const int id = intern_private(node, i, h, priv_index[i], &inserted);
        history_priv[hi][i] = id;
        PrivateInfostate& priv = node.privs[i][id];
        if (!terminal) {
          // Histories sharing an infostate must agree on the player's actions.
          const bool acting = std::find(actors.begin(), actors.end(), i) != actors.end();
          PSCFR_CHECK_MSG(acting == !priv.actions.empty(),
                          "player activity differs within an infostate");
          if (acting) {
            PSCFR_CHECK_MSG(h.legal_actions(i) == priv.actions,
                            "legal actions differ within an infostate");
          }
        }
        if (!item.links.empty()) {
          const HistoryLink& link = item.links[hi];
          if (inserted) {
            priv.parent = link.parent_priv[i];
            priv.parent_action = link.parent_action[i];
          } else {
            PSCFR_CHECK_MSG(priv.parent == link.parent_priv[i] &&
                                priv.parent_action == link.parent_action[i],
                            "inconsistent private-infostate decomposition");
          }
        }
      }
    }

    if (terminal) {
      if (num_players == 2) {
        const int rows = static_cast<int>(node.privs[0].size());
        const int cols = static_cast<int>(node.privs[1].size());
        node.chwu.assign(2, ChwuMatrix{});
        node.chwu[0].rows = rows;
        node.chwu[0].cols = cols;
        node.chwu[1].rows = cols;
        node.chwu[1].cols = rows;
        for (ChwuMatrix& m : node.chwu) {
          m.data.assign(static_cast<std::size_t>(m.rows) * m.cols, 0.0);
          m.valid.assign(static_cast<std::size_t>(m.rows) * m.cols, 0);
        }
        for (std::size_t hi = 0; hi < item.histories.size(); ++hi) {
          const History& z = item.histories[hi];
          const int a = history_priv[hi][0];
          const int b = history_priv[hi][1];
          node.chwu[0].at(a, b) += z.chance_reach() * z.utilities()[0];
          node.chwu[1].at(b, a) += z.chance_reach() * z.utilities()[1];
          node.chwu[0].valid[static_cast<std::size_t>(a) * cols + b] = 1;
          node.chwu[1].valid[static_cast<std::size_t>(b) * rows + a] = 1;
        }
      }
      continue;
    }

    // Group successors by public observation token, first-appearance order.
    std::unordered_map<std::string, std::size_t> child_index;
    std::vector<WorkItem> child_items;
    for (std::size_t hi = 0; hi < item.histories.size(); ++hi) {
      const History& h = item.histories[hi];
      const std::vector<int> actors = h.active_players();
      for (HistorySuccessor& succ : h.successors()) {
        const std::string& obs = succ.history.public_seq().back();
        auto [it, inserted] = child_index.try_emplace(obs, child_items.size());
        if (inserted) {
          WorkItem child;
          child.public_seq = item.public_seq;
          child.public_seq.push_back(obs);
          child_items.push_back(std::move(child));
        }
        HistoryLink link;
        link.parent_priv = history_priv[hi];
        link.parent_action.assign(num_players, -1);
        for (std::size_t k = 0; k < actors.size(); ++k) {
          const PrivateInfostate& priv =
              tree.nodes[node_index].privs[actors[k]][history_priv[hi][actors[k]]];
          const auto pos = std::find(priv.actions.begin(), priv.actions.end(), succ.joint[k]);
          PSCFR_CHECK(pos != priv.actions.end());
          link.parent_action[actors[k]] = static_cast<int>(pos - priv.actions.begin());
        }
        child_items[it->second].histories.push_back(std::move(succ.history));
        child_items[it->second].links.push_back(std::move(link));
      }
    }

    for (WorkItem& child : child_items) {
      const int child_id = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes[child_id].parent = node_index;
      tree.nodes[node_index].children.push_back(child_id);
      child.node_index = child_id;
    }
    for (std::size_t c = child_items.size(); c-- > 0;) {
      stack.push_back(std::move(child_items[c]));
    }
  }
  return tree;
}

long long GameCounts::infostates_total() const {
  long long total = 0;
  for (long long v : infostates) total += v;
  return total;
}

long long GameCounts::decision_infostates_total() const {
  long long total = 0;
  for (long long v : decision_infostates) total += v;
  return total;
}

GameCounts enumerate_counts(const Game& game) {
  GameCounts counts;
  counts.num_players = game.num_players();
  counts.infostates.assign(game.num_players(), 0);
  counts.decision_infostates.assign(game.num_players(), 0);

  std::vector<std::set<std::string>> seen(game.num_players());
  std::vector<std::set<std::string>> seen_decisions(game.num_players());
  struct PubInfo {
    bool terminal = false;
    std::vector<std::set<std::string>> privs;
  };
  std::map<std::string, PubInfo> pub_info;

  GamePtr shared(&game, [](const Game*) {});
  std::vector<History> frontier;
  frontier.push_back(History::root(shared));
  while (!frontier.empty()) {
    History h = std::move(frontier.back());
    frontier.pop_back();
    ++counts.histories;
    if (h.is_terminal()) ++counts.terminal_histories;

    const std::vector<int> actors = h.active_players();
    PubInfo& info = pub_info[h.public_key()];
    if (info.privs.empty()) {
      info.privs.resize(game.num_players());
      info.terminal = h.is_terminal();
    }
    for (int i = 0; i < game.num_players(); ++i) {
      const std::string key = h.infostate_key(i);
      if (seen[i].insert(key).second) ++counts.infostates[i];
      info.privs[i].insert(join(h.private_seq(i), '/'));
      if (std::find(actors.begin(), actors.end(), i) != actors.end()) {
        if (seen_decisions[i].insert(key).second) ++counts.decision_infostates[i];
      }
    }
    if (!h.is_terminal()) {
      for (HistorySuccessor& succ : h.successors()) {
        frontier.push_back(std::move(succ.history));
      }
    }
  }

  counts.public_states = static_cast<long long>(pub_info.size());
  for (const auto& [key, info] : pub_info) {
    long long product = 1;
    long long sum = 0;
    for (const auto& privs : info.privs) {
      const long long n = static_cast<long long>(privs.size());
      counts.max_privates_per_public = std::max(counts.max_privates_per_public, n);
      product *= n;
      sum += n;
    }
    if (info.terminal) {
      ++counts.terminal_public_states;
      counts.sum_terminal_priv_products += product;
      counts.sum_terminal_priv_sums += sum;
    }
  }
  return counts;
}

}  // namespace pscfr

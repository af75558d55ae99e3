#include "pscfr/sbg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pscfr/history.hpp"

namespace pscfr {

namespace {

// Canonical path id of a history: joint-action tokens and public observations
// along the way. Witnesses are chosen as lexicographic minima over these ids,
// which makes the report independent of traversal order.
std::string path_id(const std::vector<std::string>& steps) { return join(steps, '.'); }

void offer_witness(SbgCondition& cond, const std::string& witness) {
  cond.passed = false;
  if (cond.witness.empty() || witness < cond.witness) cond.witness = witness;
}

struct Walker {
  const Game& game;
  bool reverse;
  SbgReport report;
  // (ii): public key -> legal-action fingerprint -> smallest sample path.
  std::map<std::string, std::map<std::string, std::string>> fingerprints_by_public;

  // The private observation (if any) player received on the step h -> child.
  static std::string private_extension(const History& h, const History& child, int player) {
    const auto& before = h.private_seq(player);
    const auto& after = child.private_seq(player);
    // A step appends the player's own action token (when acting) and then the
    // private observation. Own actions are not observations under (i).
    const std::vector<int> actors = h.active_players();
    const bool acted = std::find(actors.begin(), actors.end(), player) != actors.end();
    const std::size_t base = before.size() + (acted ? 1 : 0);
    if (after.size() <= base) return "";
    PSCFR_CHECK(after.size() == base + 1);
    return after.back();
  }

  void record_legal_actions(const History& h, const std::vector<std::string>& steps) {
    std::ostringstream fingerprint;
    const std::vector<int> actors = h.active_players();
    for (int i = 0; i < game.num_players(); ++i) {
      fingerprint << i << '[';
      if (std::find(actors.begin(), actors.end(), i) != actors.end()) {
        std::vector<std::string> tokens;
        for (Action a : h.legal_actions(i)) tokens.push_back(h.action_token(i, a));
        std::sort(tokens.begin(), tokens.end());
        fingerprint << join(tokens, ',');
      }
      fingerprint << ']';
    }
    std::string& sample = fingerprints_by_public[h.public_key()][fingerprint.str()];
    const std::string path = path_id(steps);
    if (sample.empty() || path < sample) sample = path;
  }

  void visit(const History& h, const std::vector<std::string>& steps) {
    if (h.is_terminal()) return;
    record_legal_actions(h, steps);

    std::vector<HistorySuccessor> succs = h.successors();
    if (reverse) std::reverse(succs.begin(), succs.end());

    // (iii): one public token must not cover two distinct joint actions.
    std::map<std::string, std::vector<std::string>> joints_by_obs;
    for (const HistorySuccessor& s : succs) {
      const std::string joint = join(s.joint_tokens, ',');
      auto& seen = joints_by_obs[s.history.public_seq().back()];
      if (std::find(seen.begin(), seen.end(), joint) == seen.end()) seen.push_back(joint);
    }
    for (const auto& [obs, joints] : joints_by_obs) {
      if (joints.size() > 1) {
        std::vector<std::string> sorted = joints;
        std::sort(sorted.begin(), sorted.end());
        offer_witness(report.public_actions, "h=" + path_id(steps) + " obs=" + obs +
                                                 " actions={" + join(sorted, ';') + "}");
      }
    }

    // (i): transitions out of the initial world are exempt.
    if (h.depth() >= 1) {
      for (const HistorySuccessor& s : succs) {
        for (int i = 1; i < game.num_players(); ++i) {
          if (private_extension(h, s.history, 0) != private_extension(h, s.history, i)) {
            offer_witness(report.no_private_observations,
                          "h=" + path_id(steps) + " obs=" + s.history.public_seq().back());
            break;
          }
        }
      }
    }

    for (const HistorySuccessor& s : succs) {
      std::vector<std::string> child_steps = steps;
      child_steps.push_back("a=" + join(s.joint_tokens, ',') +
                            ";o=" + s.history.public_seq().back());
      visit(s.history, child_steps);
    }
  }
};

}  // namespace

std::string SbgReport::summary() const {
  auto line = [](const char* tag, const SbgCondition& c) {
    std::string s = std::string(tag) + ": " + (c.passed ? "pass" : "FAIL");
    if (!c.passed) s += " [" + c.witness + "]";
    return s;
  };
  return line("(i) no private observations", no_private_observations) + "\n" +
         line("(ii) public legal actions", public_legal_actions) + "\n" +
         line("(iii) public actions", public_actions);
}

SbgReport check_sbg(const Game& game, const SbgCheckOptions& options) {
  Walker walker{game, options.reverse_traversal, {}, {}};
  GamePtr shared(&game, [](const Game*) {});
  walker.visit(History::root(shared), {});

  for (const auto& [pub, fingerprints] : walker.fingerprints_by_public) {
    if (fingerprints.size() > 1) {
      std::vector<std::string> samples;
      for (const auto& [fp, path] : fingerprints) samples.push_back(path);
      std::sort(samples.begin(), samples.end());
      offer_witness(walker.report.public_legal_actions,
                    "pub=" + pub + " h=" + samples[0] + " vs h=" + samples[1]);
    }
  }
  return walker.report;
}

}  // namespace pscfr

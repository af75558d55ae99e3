#include <benchmark/benchmark.h>

#include "pscfr/cfr.hpp"
#include "pscfr/games.hpp"
#include "pscfr/public_tree.hpp"

namespace {

using namespace pscfr;

constexpr const char* kRiver = "river:deck=20,hand=1,pot=200,stack=1000,abs=fcpa";

void BM_Iteration(benchmark::State& state, const char* spec, UpdaterKind kind) {
  GamePtr game = make_game(spec);
  auto solver = make_solver(game, kind);
  solver->run_iteration();  // tables warm
  for (auto _ : state) {
    solver->run_iteration();
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_PublicTreeSetup(benchmark::State& state, const char* spec) {
  GamePtr game = make_game(spec);
  for (auto _ : state) {
    PublicTree tree = build_public_tree(game);
    benchmark::DoNotOptimize(tree.nodes.data());
  }
}

void BM_TerminalEval(benchmark::State& state, bool poker_linear) {
  GamePtr game = make_game(kRiver);
  const PublicTree tree = build_public_tree(game);
  std::vector<const PublicState*> terminals;
  std::vector<PokerTerminalInfo> infos;
  for (const PublicState& node : tree.nodes) {
    if (!node.terminal) continue;
    terminals.push_back(&node);
    infos.push_back(classify_poker_terminal(*game, node));
  }
  const int n = static_cast<int>(terminals.front()->privs[0].size());
  std::vector<double> r1(n, 0.3), r2(n, 0.4), v1(n), v2(n);
  Counters counters;
  for (auto _ : state) {
    for (std::size_t k = 0; k < terminals.size(); ++k) {
      std::fill(v1.begin(), v1.end(), 0.0);
      std::fill(v2.begin(), v2.end(), 0.0);
      if (poker_linear) {
        terminal_eval_poker_linear(infos[k], r1, r2, v1, v2, counters);
      } else {
        terminal_eval_generic(*terminals[k], r1, r2, v1, v2, counters);
      }
      benchmark::DoNotOptimize(v1.data());
    }
  }
  state.SetItemsProcessed(state.iterations() * terminals.size());
}

}  // namespace

BENCHMARK_CAPTURE(BM_Iteration, kuhn_vanilla, "kuhn", UpdaterKind::history_tree);
BENCHMARK_CAPTURE(BM_Iteration, kuhn_ps, "kuhn", UpdaterKind::public_tree);
BENCHMARK_CAPTURE(BM_Iteration, leduc_vanilla, "leduc", UpdaterKind::history_tree);
BENCHMARK_CAPTURE(BM_Iteration, leduc_ps, "leduc", UpdaterKind::public_tree);
BENCHMARK_CAPTURE(BM_Iteration, river20_vanilla, kRiver, UpdaterKind::history_tree)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Iteration, river20_ps, kRiver, UpdaterKind::public_tree);
BENCHMARK_CAPTURE(BM_Iteration, river20_ps_domain, kRiver, UpdaterKind::public_tree_domain);
BENCHMARK_CAPTURE(BM_PublicTreeSetup, river20, kRiver)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TerminalEval, river20_generic, false);
BENCHMARK_CAPTURE(BM_TerminalEval, river20_poker_linear, true);

BENCHMARK_MAIN();

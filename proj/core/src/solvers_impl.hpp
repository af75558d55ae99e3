#pragma once

#include <memory>

#include "pscfr/cfr.hpp"

namespace pscfr::detail {

std::unique_ptr<CfrSolver> make_vanilla_solver(GamePtr game, AverageMode average);
std::unique_ptr<CfrSolver> make_ps_solver(GamePtr game, AverageMode average, bool poker_terminal);

}  // namespace pscfr::detail

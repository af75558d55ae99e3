#pragma once

#include <iosfwd>
#include <string>

#include "pscfr/cfr.hpp"

namespace pscfr {

// Strategy file: one `<infostate key>\t<action token>\t<probability>` line per
// action, probabilities with 12 significant digits, sorted by key then action
// token. Per-infostate probabilities must sum to 1 within 1e-9; read/write
// round-trips byte-identically.
void write_strategy(const Policy& policy, std::ostream& out);
void write_strategy_file(const Policy& policy, const std::string& path);
Policy read_strategy(std::istream& in);
Policy read_strategy_file(const std::string& path);

}  // namespace pscfr

#include "pscfr/strategy_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pscfr {

void write_strategy(const Policy& policy, std::ostream& out) {
  char buffer[64];
  for (const auto& [key, entry] : policy) {
    PSCFR_CHECK_MSG(entry.actions.size() == entry.probs.size(), "malformed policy entry");
    double sum = 0.0;
    for (double p : entry.probs) sum += p;
    PSCFR_CHECK_MSG(std::abs(sum - 1.0) <= 1e-9, "policy at " + key + " does not sum to 1");

    std::vector<std::size_t> order(entry.actions.size());
    for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return entry.actions[a] < entry.actions[b];
    });
    for (std::size_t a : order) {
      std::snprintf(buffer, sizeof(buffer), "%.12g", entry.probs[a]);
      out << key << '\t' << entry.actions[a] << '\t' << buffer << '\n';
    }
  }
}

void write_strategy_file(const Policy& policy, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_strategy(policy, out);
}

Policy read_strategy(std::istream& in) {
  Policy policy;
  std::string line;
  long long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::size_t tab1 = line.find('\t');
    const std::size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                                       : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw ConfigError("strategy file line " + std::to_string(line_number) +
                        ": expected three tab-separated fields");
    }
    const std::string key = line.substr(0, tab1);
    const std::string action = line.substr(tab1 + 1, tab2 - tab1 - 1);
    char* end = nullptr;
    const double prob = std::strtod(line.c_str() + tab2 + 1, &end);
    if (end == nullptr || *end != '\0') {
      throw ConfigError("strategy file line " + std::to_string(line_number) +
                        ": bad probability");
    }
    PolicyEntry& entry = policy[key];
    entry.actions.push_back(action);
    entry.probs.push_back(prob);
  }
  for (const auto& [key, entry] : policy) {
    double sum = 0.0;
    for (double p : entry.probs) sum += p;
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ConfigError("strategy at " + key + " does not sum to 1");
    }
  }
  return policy;
}

Policy read_strategy_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "' for reading");
  return read_strategy(in);
}

}  // namespace pscfr

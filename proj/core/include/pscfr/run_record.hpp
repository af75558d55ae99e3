#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pscfr {

// Per-iteration instrumentation rows. `value_updates_cum` aggregates infostate
// value and infostate-action value writes; `wall_ms` is cumulative solver time
// in milliseconds. Exploitability is present only on sampled iterations.
struct RunRecord {
  struct Row {
    long long iter = 0;
    std::string algo;
    std::optional<double> exploitability;
    long long value_updates_cum = 0;
    double wall_ms = 0.0;
  };

  std::vector<Row> rows;

  // Schema: iter,algo,exploitability,value_updates_cum,wall_ms with an empty
  // exploitability cell on unsampled rows. `zero_wall` writes 0 in the wall
  // column so reruns are byte-identical.
  void write_csv(std::ostream& out, bool zero_wall = false) const;
  void write_csv_file(const std::string& path, bool zero_wall = false) const;
};

}  // namespace pscfr

#include "pscfr/run_record.hpp"

#include <cstdio>
#include <fstream>

#include "pscfr/common.hpp"

namespace pscfr {

void RunRecord::write_csv(std::ostream& out, bool zero_wall) const {
  out << "iter,algo,exploitability,value_updates_cum,wall_ms\n";
  char buffer[64];
  for (const Row& row : rows) {
    out << row.iter << ',' << row.algo << ',';
    if (row.exploitability.has_value()) {
      std::snprintf(buffer, sizeof(buffer), "%.12g", *row.exploitability);
      out << buffer;
    }
    out << ',' << row.value_updates_cum << ',';
    std::snprintf(buffer, sizeof(buffer), "%.6g", zero_wall ? 0.0 : row.wall_ms);
    out << buffer << '\n';
  }
}

void RunRecord::write_csv_file(const std::string& path, bool zero_wall) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_csv(out, zero_wall);
}

}  // namespace pscfr

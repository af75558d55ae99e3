#include "pscfr/common.hpp"

#include <sstream>

namespace pscfr {

namespace detail {

void fail_check(const char* expr, const char* file, int line, const std::string& msg) {
  std::ostringstream out;
  out << "check failed: " << expr << " at " << file << ":" << line;
  if (!msg.empty()) out << " (" << msg << ")";
  throw ContractError(out.str());
}

}  // namespace detail

std::string join(const std::vector<std::string>& tokens, char sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace pscfr

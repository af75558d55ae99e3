#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pscfr {

// Thrown when a caller breaks an operation's contract (terminal input where a
// non-terminal is required, mismatched vector sizes, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Thrown on malformed game-spec strings. `position` is the byte offset of the
// first offending character.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

// Thrown when a spec parses but describes an infeasible or unsupported game.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] void fail_check(const char* expr, const char* file, int line, const std::string& msg);
}  // namespace detail

#define PSCFR_CHECK(cond)                                              \
  do {                                                                 \
    if (!(cond)) ::pscfr::detail::fail_check(#cond, __FILE__, __LINE__, ""); \
  } while (false)

#define PSCFR_CHECK_MSG(cond, msg)                                     \
  do {                                                                 \
    if (!(cond)) ::pscfr::detail::fail_check(#cond, __FILE__, __LINE__, (msg)); \
  } while (false)

std::string join(const std::vector<std::string>& tokens, char sep);
std::vector<std::string> split(std::string_view text, char sep);

}  // namespace pscfr

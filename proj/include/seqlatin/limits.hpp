#ifndef SEQLATIN_LIMITS_HPP
#define SEQLATIN_LIMITS_HPP

#include <cstddef>
#include <cstdlib>
#include <string>

#include "seqlatin/error.hpp"

namespace seqlatin {

// Desk-scale caps.  SEQLATIN_DESK_LIMIT may hold a single integer (the order
// cap for end-to-end sequencing) or comma separated key=value pairs with
// keys order, search, exhaustive, graceful, enumerate.
struct DeskLimits {
  std::size_t order = 5000;        // sequence_order
  std::size_t search_order = 250;  // search_r_terrace group order
  std::size_t exhaustive = 16;     // exhaustive_sequencings group order
  std::size_t graceful = 40;       // graceful_with_first k
  std::size_t enumerate = 8;       // enumerate_graceful k
};

inline DeskLimits parse_desk_limits(const std::string& text, DeskLimits base = {}) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == s.size() && !s.empty(), Errc::ParseError, "bad desk limit value '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  if (text.empty()) return base;
  if (text.find('=') == std::string::npos) {
    base.order = number(text);
    return base;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    auto item = text.substr(start, end - start);
    auto eq = item.find('=');
    require(eq != std::string::npos, Errc::ParseError, "expected key=value in '" + item + "'");
    auto key = item.substr(0, eq);
    auto val = number(item.substr(eq + 1));
    if (key == "order") base.order = val;
    else if (key == "search") base.search_order = val;
    else if (key == "exhaustive") base.exhaustive = val;
    else if (key == "graceful") base.graceful = val;
    else if (key == "enumerate") base.enumerate = val;
    else fail(Errc::ParseError, "unknown desk limit key '" + key + "'");
    start = end + 1;
  }
  return base;
}

// Limits in effect for this process, read once from the environment.
inline const DeskLimits& desk_limits() {
  static const DeskLimits lim = [] {
    const char* env = std::getenv("SEQLATIN_DESK_LIMIT");
    return parse_desk_limits(env ? env : "");
  }();
  return lim;
}

}  // namespace seqlatin

#endif  // SEQLATIN_LIMITS_HPP

#ifndef SEQLATIN_ERROR_HPP
#define SEQLATIN_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace seqlatin {

using Int = std::int64_t;

enum class Errc {
  InvalidArgument,
  DimensionMismatch,
  NotCoprime,
  NoStarIndex,
  NotIndependent,
  OrderMismatch,
  Diagonalisable,
  ConditionsViolated,
  ConstructionFailed,
  NotFound,
  NotATerrace,
  OddOrder,
  UnsupportedDecomposition,
  DeskScaleExceeded,
  ParseError,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NoStarIndex: return "NoStarIndex";
    case Errc::NotIndependent: return "NotIndependent";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::Diagonalisable: return "Diagonalisable";
    case Errc::ConditionsViolated: return "ConditionsViolated";
    case Errc::ConstructionFailed: return "ConstructionFailed";
    case Errc::NotFound: return "NotFound";
    case Errc::NotATerrace: return "NotATerrace";
    case Errc::OddOrder: return "OddOrder";
    case Errc::UnsupportedDecomposition: return "UnsupportedDecomposition";
    case Errc::DeskScaleExceeded: return "DeskScaleExceeded";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace seqlatin

#endif  // SEQLATIN_ERROR_HPP

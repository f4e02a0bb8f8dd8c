#ifndef SEQLATIN_TESTS_SUPPORT_HPP
#define SEQLATIN_TESTS_SUPPORT_HPP

#include <ostream>

#include "seqlatin/seqlatin.hpp"

namespace seqlatin {

// readable gtest failure messages
inline void PrintTo(const AbElem& x, std::ostream* os) { *os << to_string(x); }
inline void PrintTo(const SdElem& x, std::ostream* os) { *os << to_string(x); }

}  // namespace seqlatin

#endif  // SEQLATIN_TESTS_SUPPORT_HPP

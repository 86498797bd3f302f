#ifndef HYPERCOUNT_COMMON_HPP
#define HYPERCOUNT_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hypercount {

// Base error for invalid inputs and unsatisfiable requests.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an exact computation would exceed its feasibility guard.
// Callers that sweep over grids convert this into a "skipped: guard" row.
class GuardExceeded : public Error {
 public:
  explicit GuardExceeded(const std::string& msg) : Error(msg) {}
};

// Feasibility guards for the exact engines.
inline constexpr std::uint64_t kPairEnumerationGuard = 5000;   // copies, pairwise sums
inline constexpr std::uint64_t kQuadEnumerationGuard = 300;    // copies, fourth moment
inline constexpr int kOracleEdgeBudget = 24;                   // relevant concrete edges

}  // namespace hypercount

#endif

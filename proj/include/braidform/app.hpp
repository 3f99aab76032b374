#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "braidform/invariant.hpp"
#include "braidform/rmatrix.hpp"

namespace braidform::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kSchemaVersion = 1;

/// Raised for malformed command lines; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NRange {
  int lo = 0;
  int hi = 0;
};

/// "5" or "2..6". An empty range (hi < lo) is a usage error.
NRange parse_n_range(std::string_view text);

/// Catalog form "ex3:theta=pi/3" / "ex1:theta=0,eps=-1", the names "swap"
/// and "identity", inline JSON starting with '{', or a path to a JSON file.
RMatrix parse_matrix_spec(std::string_view spec);

/// Tolerance from BRAIDFORM_TOLERANCE, falling back to kDefaultTolerance.
double default_tolerance();

/// Runs one CLI invocation; args exclude the program name. Returns 0 on
/// success, 1 when a verification or --expect assertion fails, 2 on usage
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace braidform::app

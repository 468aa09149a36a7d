// Command-line driver. Exit codes: 0 property holds / success, 1 property fails,
// 2 usage, input or internal error, 3 bound violation.
#pragma once

#include <ostream>

namespace bsc {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitBound = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bsc

#pragma once

#include <ostream>

namespace langsel::cli {

/// Exit codes: 0 success, 2 usage, 3 validation, 4 I/O.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitIo = 4;

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace langsel::cli

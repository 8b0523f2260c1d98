#pragma once

#include <iosfwd>

namespace porowave::cli {

inline constexpr const char* kVersion = "1.0.0";

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalFailure = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace porowave::cli

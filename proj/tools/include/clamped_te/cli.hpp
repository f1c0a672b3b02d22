#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clamped_te::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Relative --output paths are resolved against this directory when set.
inline constexpr const char* kOutputDirEnv = "CLAMPED_TE_OUTPUT_DIR";

/// args excludes the program name. Results go to `out` unless --output is
/// given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clamped_te::cli

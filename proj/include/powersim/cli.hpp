#pragma once

#include <ostream>

namespace powersim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitFailure = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "POWERSIM_OUT_DIR";

/// Entry point behind the `powersim` executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace powersim

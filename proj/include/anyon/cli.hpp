#pragma once

#include <ostream>

namespace anyon::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kValidation = 3;
inline constexpr int kNumerical = 4;

/// Entry point of the anyon_tee command line tool. Results go to `out` (or the
/// --out file), diagnostics and usage text to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anyon::cli

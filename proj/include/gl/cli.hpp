#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gl::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kDiverged = 2;
inline constexpr int kInconclusive = 3;

/// Runs one command line (without the program name). Reports go to `out`
/// (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gl::cli

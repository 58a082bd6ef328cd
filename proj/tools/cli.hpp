#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sdiam/error.hpp"

namespace sdiam::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitPrecondition = 4;
inline constexpr int kExitInternal = 5;

int exit_code(ErrorKind kind);

/// Runs one command line (args excludes the program name). Results go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdiam::cli

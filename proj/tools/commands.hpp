#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace resistnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;     // usage, parse and I/O failures
inline constexpr int kExitNegative = 2;  // unstable, not applicable, diverged

/// `resistnet {analyze|margin|simulate|repro-sec6} [flags]`. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resistnet::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace momgauge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitAssertion = 3;

/// Dispatch one CLI invocation.  args excludes the program name.
/// JSON results go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace momgauge::cli

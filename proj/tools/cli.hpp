#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loam::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes: 0 success, 1 runtime failure, 2 usage error.
/// `args` excludes the program name. Artifacts go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace loam::cli

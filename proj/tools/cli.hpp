#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // parse or flag error
inline constexpr int kExitNoCurve = 2;    // find-curve / certify-fisher produced nothing
inline constexpr int kExitTolerance = 3;  // verify / shoot tolerance failure

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dw::cli

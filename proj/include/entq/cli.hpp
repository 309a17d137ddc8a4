// Command-line front end: gen, measure, verify, haar.
//
// Exit codes: 0 success, 1 usage or file error, 2 verification failure.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 15 significant digits, round-half-even on exact ties; "-0" prints as "0".
std::string format_number(double x);

}  // namespace entq::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace goldsplit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// `goldsplit generate|run|verify [flags]`. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "<number>" or "<number>/K", the latter divided by k_norm.
double parse_scaled_value(const std::string& text, double k_norm);
bool is_k_scaled(const std::string& text);

}  // namespace goldsplit

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subgauss::cli {

// Exit statuses of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

// Runs one invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.12g, with "inf" / "-inf" / "nan" spelled out.
std::string format_number(double x);

}  // namespace subgauss::cli

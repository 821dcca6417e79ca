#pragma once

// Command-line harness. run() is the whole program minus process plumbing, so
// tests can drive it in-process and compare outputs byte for byte.

#include <iosfwd>
#include <string>
#include <vector>

namespace hofourier::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 2,
    kUsage = 64,
    kNumeric = 65,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "4,8,16", "10..200" (step 1) or "10..200:10". Throws ParameterError.
std::vector<int> parse_int_list(const std::string& spec);
/// Comma-separated reals.
std::vector<double> parse_real_list(const std::string& spec);

/// printf %.17g
std::string format_double(double v);

}  // namespace hofourier::cli

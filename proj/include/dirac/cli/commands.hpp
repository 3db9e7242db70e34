#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirac::cli
{
namespace exit_code
{
inline constexpr int success = 0;
inline constexpr int internal_error = 1;
inline constexpr int input_error = 2;
inline constexpr int not_second_class = 3;
inline constexpr int sampling_failure = 4;
inline constexpr int non_polynomial = 5;
}  // namespace exit_code

std::string version();

/**
 * Runs one command line (without the program name). The report goes to `out`,
 * diagnostics to `err`; the return value is the process exit code.
 *
 *     analyze <file> [--format text|json] [--timings]
 *     bracket <file> --f <expr> --g <expr> [--mode poisson|dirac]
 *     classify <file> [--format text|json] [--timings]
 *     trace <file> [--format text|json]
 *     closure <file> [--mode poisson|dirac] [--format text|json] [--timings]
 *     verdict <file> [--format text|json]
 */
int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

}  // namespace dirac::cli

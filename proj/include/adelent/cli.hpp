// Command-line front end: one subcommand per module.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adelent/report.hpp"

namespace adelent {

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string subcommand;
  // Entity arguments, kept as text until run() parses them.
  std::string a, b;
  std::string curve, point, poly, q, action, rate, place_filter, place;
  // "p=value" local heights supplied at singular primes.
  std::vector<std::string> supplied;
  std::size_t n = 3;
  std::size_t panels = 1 << 16;
  std::size_t depth = 10;
  std::size_t psi_n = 200;
  std::size_t horizon = 10;
  std::size_t level = 8;
  double tol = 1e-8;
  OutputFormat format = OutputFormat::json;
  std::string output;
};

// Parses argv (argv[0] is the program name). Throws ParseError on bad usage;
// returns nullopt after printing help or the version to `out`.
std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args, std::ostream& out);

// The report document for a configuration. Throws ParseError for malformed
// arguments and ComputationError for failed computations.
Json execute(const RunConfig& config);

// Trace rows "n,quantity,value" preceded by a header line.
std::string render_csv(const Json& report);

// Runs and writes the report to config.output or `out`. Returns the exit
// status: 0 ok, 1 computational error, 2 usage error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_command_line followed by run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adelent

// Copyright 2026 The QPN Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPN_CLI_HPP
#define QPN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qpn/inference.hpp"

namespace qpn::cli {

enum class OutputFormat { Text, Json };

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2 };

struct CliConfig {
  std::string subcommand;
  std::string network_path;
  std::string dist_path;
  Mode mode = Mode::Sound;
  OutputFormat output = OutputFormat::Text;
  bool trails = false;
  // Subcommand arguments.
  std::string x, y;                    // dependence, dsep
  std::vector<std::string> given;      // dsep, dependence context
  std::string observe;                 // propagate: NODE=+|-
  std::string from, to;                // query
  std::string node;                    // reduce
  std::string edge;                    // reverse: A,B
  std::string demo;                    // table1 | shuttle
  double fault_prob = 0.05;
  std::string claim;                   // find-counterexample
  std::uint64_t seed = 42;
  std::size_t trials = 10000;
};

/// Parses argv-style arguments (without the program name). Help requests
/// and parse failures are reported through `out`/`err` and turn into the
/// returned exit code; the config is only meaningful when it returns kOk
/// and `help_shown` stays false.
int parse_args(const std::vector<std::string>& args, CliConfig& config, bool& help_shown,
               std::ostream& out, std::ostream& err);

/// Executes a parsed configuration. Returns 0 on success, 1 when a check
/// finds a violation or a search fails, 2 on input errors.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpn::cli

#endif  // QPN_CLI_HPP

// Copyright 2026 The catbell Authors
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


#pragma once

// catbell command-line front end. run_cli is the whole program minus the
// process boundary, so tests drive it in-process.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace catbell::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumerical = 3,
  kOracleMismatch = 4,
};

/// Bumped whenever a column is added, removed or reordered.
inline constexpr int kTableVersion = 1;

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Scalar results reported after the rows (CSV comment lines, JSON object).
  std::vector<std::pair<std::string, Cell>> summary;
};

/// Shortest decimal that round-trips the double.
std::string format_number(double v);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

/// Writes via a temporary file in the same directory and a rename.
void write_atomically(const std::string& path, const std::string& contents);

/// "lo:hi:n" (n evenly spaced values, ends included) or a comma list.
std::vector<double> parse_grid(const std::string& spec);

/// argv without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace catbell::cli

// Copyright 2026 The ucoalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef UCOALIGN_TOOLS_CLI_CSV_H_
#define UCOALIGN_TOOLS_CLI_CSV_H_

#include <string>
#include <vector>

namespace ucoalign::cli {

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

// Comma-separated table with a fixed header. Fields holding a comma, quote or
// newline are quoted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> fields);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Splits a CSV document into rows of fields (header included). Understands the
// quoting written by CsvTable.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace ucoalign::cli

#endif  // UCOALIGN_TOOLS_CLI_CSV_H_

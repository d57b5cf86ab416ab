// Copyright 2026 The cxrlabel Authors.
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

#ifndef CXRLABEL_CSV_HPP_
#define CXRLABEL_CSV_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cxrlabel::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// RFC 4180 reader: comma separated, double-quoted fields may contain commas,
// doubled quotes and newlines. CRLF and LF line endings are accepted. Blank
// lines and lines starting with '#' are skipped.
std::vector<Row> parse(std::string_view text);

// Quotes a field only when it contains a comma, quote, or line break.
std::string escape(std::string_view field);

// Joins escaped fields with commas and a trailing '\n'.
std::string format_row(const std::vector<std::string>& fields);

}  // namespace cxrlabel::csv

#endif  // CXRLABEL_CSV_HPP_

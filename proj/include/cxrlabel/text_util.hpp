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

#ifndef CXRLABEL_TEXT_UTIL_HPP_
#define CXRLABEL_TEXT_UTIL_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cxrlabel {

// ASCII-only case folding; byte offsets are preserved.
std::string to_lower_ascii(std::string_view text);
char lower_ascii(char c);
bool is_alpha_ascii(char c);
bool is_alnum_ascii(char c);
bool is_space_ascii(char c);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char delimiter);
bool iequals(std::string_view a, std::string_view b);

// Whole-file IO. Failures throw Error(kIoError) naming the path.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Fixed-precision formatting used by every CSV writer; NaN prints as "NA".
std::string format_fixed(double value, int precision = 6);
// Shortest round-trippable representation.
std::string format_exact(double value);

}  // namespace cxrlabel

#endif  // CXRLABEL_TEXT_UTIL_HPP_

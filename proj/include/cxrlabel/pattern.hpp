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

#ifndef CXRLABEL_PATTERN_HPP_
#define CXRLABEL_PATTERN_HPP_

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "cxrlabel/types.hpp"

namespace cxrlabel {

// A rule pattern in the toolkit's conservative regex dialect:
//
//   literals      letters, digits, space and the punctuation - / ' , : %
//   any char      .
//   classes       [abc] [a-z] [^...]
//   escapes       \b \B \w \W \s \S \d \D and backslash-escaped punctuation
//   groups        ( ... ) and (?: ... )
//   alternation   |
//   quantifiers   ? * + {m} {m,} {m,n}, optionally lazy with a trailing ?
//   anchors       ^ $
//
// Backreferences, lookaround, named groups and any other (? construct are
// rejected. Matching is case-insensitive: literal letters are folded to
// lowercase at compile time and subject text is expected lowercase.
class Pattern {
 public:
  // Throws Error(kConfigError) with `where` prefixed to the message.
  static Pattern compile(std::string_view source, const std::string& where);

  const std::string& source() const { return source_; }

  // All non-overlapping leftmost matches in `lowered_text`.
  std::vector<CharRange> find_all(std::string_view lowered_text) const;
  // First match at or after `from`.
  std::optional<CharRange> find(std::string_view lowered_text,
                                std::size_t from = 0) const;
  bool search(std::string_view lowered_text) const;

 private:
  std::string source_;
  std::regex regex_;
};

// Returns an explanation if `source` is outside the dialect.
std::optional<std::string> dialect_violation(std::string_view source);

}  // namespace cxrlabel

#endif  // CXRLABEL_PATTERN_HPP_

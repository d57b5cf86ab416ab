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

#include "cxrlabel/pattern.hpp"

#include <cstring>

#include "cxrlabel/error.hpp"
#include "cxrlabel/text_util.hpp"

namespace cxrlabel {
namespace {

constexpr std::string_view kClassEscapes = "bBwWsSdD";
constexpr std::string_view kLiteralPunct = " -/',:%";
constexpr std::string_view kEscapablePunct = ".-/()[]{}|?*+^$\\ ',:%";

}  // namespace

std::optional<std::string> dialect_violation(std::string_view s) {
  if (s.empty()) return "empty pattern";
  int depth = 0;
  bool in_class = false;
  bool can_quantify = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '\\') {
      if (i + 1 >= s.size()) return "trailing backslash";
      const char n = s[++i];
      if (n >= '0' && n <= '9') return "backreferences are not allowed";
      if (kClassEscapes.find(n) == std::string_view::npos &&
          kEscapablePunct.find(n) == std::string_view::npos) {
        return std::string("unsupported escape \\") + n;
      }
      can_quantify = !(n == 'b' || n == 'B');
      continue;
    }
    if (in_class) {
      if (c == ']') {
        in_class = false;
        can_quantify = true;
      }
      continue;
    }
    switch (c) {
      case '[':
        in_class = true;
        if (i + 1 < s.size() && s[i + 1] == '^') ++i;
        if (i + 1 < s.size() && s[i + 1] == ']') ++i;  // literal ']' first
        break;
      case ']':
        return "unbalanced ']'";
      case '(':
        if (i + 1 < s.size() && s[i + 1] == '?') {
          if (i + 2 < s.size() && s[i + 2] == ':') {
            i += 2;
          } else {
            return "lookaround and named groups are not allowed";
          }
        }
        ++depth;
        can_quantify = false;
        break;
      case ')':
        if (--depth < 0) return "unbalanced ')'";
        can_quantify = true;
        break;
      case '|':
        can_quantify = false;
        break;
      case '?':
      case '*':
      case '+':
        if (!can_quantify) return std::string("quantifier '") + c + "' has nothing to repeat";
        if (i + 1 < s.size() && s[i + 1] == '?') ++i;
        can_quantify = false;
        break;
      case '{': {
        if (!can_quantify) return "quantifier '{' has nothing to repeat";
        const auto close = s.find('}', i);
        if (close == std::string_view::npos) return "unterminated '{'";
        for (std::size_t k = i + 1; k < close; ++k) {
          if (!(s[k] == ',' || (s[k] >= '0' && s[k] <= '9'))) {
            return "malformed repetition count";
          }
        }
        if (close == i + 1 || s[i + 1] == ',') return "malformed repetition count";
        i = close;
        if (i + 1 < s.size() && s[i + 1] == '?') ++i;
        can_quantify = false;
        break;
      }
      case '}':
        return "unbalanced '}'";
      case '^':
      case '$':
        can_quantify = false;
        break;
      case '.':
        can_quantify = true;
        break;
      default:
        if (is_alnum_ascii(c) || kLiteralPunct.find(c) != std::string_view::npos) {
          can_quantify = true;
        } else {
          return std::string("unsupported character '") + c + "'";
        }
    }
  }
  if (in_class) return "unterminated character class";
  if (depth != 0) return "unbalanced '('";
  return std::nullopt;
}

Pattern Pattern::compile(std::string_view source, const std::string& where) {
  if (auto why = dialect_violation(source)) {
    throw Error(ErrorCode::kConfigError,
                where + ": pattern '" + std::string(source) + "': " + *why);
  }
  // Fold literal letters; escape letters keep their case.
  std::string folded(source);
  for (std::size_t i = 0; i < folded.size(); ++i) {
    if (folded[i] == '\\') {
      ++i;
      continue;
    }
    folded[i] = lower_ascii(folded[i]);
  }
  Pattern p;
  p.source_ = std::string(source);
  try {
    p.regex_ = std::regex(folded, std::regex::ECMAScript | std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::kConfigError, where + ": pattern '" +
                                             std::string(source) +
                                             "' does not compile: " + e.what());
  }
  return p;
}

std::vector<CharRange> Pattern::find_all(std::string_view text) const {
  std::vector<CharRange> out;
  using It = std::string_view::const_iterator;
  for (std::regex_iterator<It> it(text.begin(), text.end(), regex_), end;
       it != end; ++it) {
    const auto pos = static_cast<std::size_t>(it->position(0));
    const auto len = static_cast<std::size_t>(it->length(0));
    if (len == 0) continue;
    out.push_back(CharRange{pos, pos + len});
  }
  return out;
}

std::optional<CharRange> Pattern::find(std::string_view text,
                                       std::size_t from) const {
  if (from > text.size()) return std::nullopt;
  std::match_results<std::string_view::const_iterator> m;
  auto flags = std::regex_constants::match_default;
  if (from > 0) flags |= std::regex_constants::match_prev_avail;
  auto begin = text.begin() + static_cast<std::ptrdiff_t>(from);
  while (std::regex_search(begin, text.end(), m, regex_, flags)) {
    const auto pos = static_cast<std::size_t>(m.position(0)) +
                     static_cast<std::size_t>(begin - text.begin());
    const auto len = static_cast<std::size_t>(m.length(0));
    if (len > 0) return CharRange{pos, pos + len};
    if (pos >= text.size()) break;
    begin = text.begin() + static_cast<std::ptrdiff_t>(pos + 1);
    flags |= std::regex_constants::match_prev_avail;
  }
  return std::nullopt;
}

bool Pattern::search(std::string_view text) const {
  return std::regex_search(text.begin(), text.end(), regex_);
}

}  // namespace cxrlabel

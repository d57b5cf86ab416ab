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

#include "cxrlabel/lemmatizer.hpp"

#include <algorithm>

#include "cxrlabel/builtin_data.hpp"
#include "cxrlabel/error.hpp"
#include "cxrlabel/text_util.hpp"

namespace cxrlabel {
namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool ending_matches(std::string_view word, std::string_view pattern) {
  if (word.size() < pattern.size()) return false;
  const auto tail = word.substr(word.size() - pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == 'C') {
      if (!is_alpha_ascii(tail[i]) || is_vowel(tail[i])) return false;
    } else if (pattern[i] != tail[i]) {
      return false;
    }
  }
  return true;
}

bool viable_stem(std::string_view stem) {
  return stem.size() >= 2 && std::any_of(stem.begin(), stem.end(), is_vowel);
}

constexpr int kMaxSteps = 16;

}  // namespace

Lemmatizer Lemmatizer::parse(std::string_view rules_text) {
  Lemmatizer lem;
  std::size_t line_no = 0;
  for (auto raw : split(rules_text, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (trim(raw).empty() || trim(raw).front() == '#') continue;
    auto fields = split(raw, '\t');
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::kConfigError, "lemma rules line " +
                                               std::to_string(line_no) + ": " +
                                               why);
    };
    if (fields.size() < 2) fail("expected tab-separated fields");

    if (fields[0] == "@keep_double") {
      for (auto letter : split(fields[1], ',')) {
        if (trim(letter).size() != 1) fail("@keep_double takes single letters");
        lem.keep_double_.push_back(trim(letter)[0]);
      }
    } else if (fields[0] == "@restore_e") {
      for (auto e : split(fields[1], ',')) {
        e = trim(e);
        if (e.empty()) fail("empty @restore_e ending");
        Ending ending;
        if (e.front() == '!') {
          ending.negative = true;
          e.remove_prefix(1);
        }
        ending.pattern = std::string(e);
        lem.restore_e_.push_back(std::move(ending));
      }
    } else if (fields[0].starts_with('*')) {
      Rule rule;
      rule.suffix = std::string(fields[0].substr(1));
      if (rule.suffix.empty()) fail("empty suffix");
      rule.replacement = fields[1] == "-" ? "" : std::string(fields[1]);
      for (std::size_t i = 2; i < fields.size(); ++i) {
        const auto opt = trim(fields[i]);
        if (opt.empty()) continue;
        if (opt == "repair") {
          rule.repair = true;
        } else if (opt.starts_with("keep=")) {
          for (auto k : split(opt.substr(5), ',')) {
            rule.keep.emplace_back(trim(k));
          }
        } else {
          fail("unknown rule option '" + std::string(opt) + "'");
        }
      }
      lem.rules_.push_back(std::move(rule));
    } else if (fields[0].starts_with('@')) {
      fail("unknown directive '" + std::string(fields[0]) + "'");
    } else {
      const auto surface = to_lower_ascii(trim(fields[0]));
      const auto target = to_lower_ascii(trim(fields[1]));
      if (surface.empty() || target.empty()) fail("empty exception entry");
      lem.exceptions_[surface] = target;
    }
  }
  return lem;
}

Lemmatizer Lemmatizer::from_file(const std::string& path) {
  return parse(read_file(path));
}

const Lemmatizer& Lemmatizer::builtin() {
  static const Lemmatizer lem = parse(builtin_lemma_rules());
  return lem;
}

std::string Lemmatizer::repair(std::string stem) const {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1])) {
    if (keep_double_.find(stem[n - 1]) == std::string::npos) stem.pop_back();
    return stem;
  }
  for (const auto& e : restore_e_) {
    if (e.negative && ending_matches(stem, e.pattern)) return stem;
  }
  for (const auto& e : restore_e_) {
    if (!e.negative && ending_matches(stem, e.pattern)) return stem + 'e';
  }
  return stem;
}

bool Lemmatizer::step(std::string& word) const {
  if (auto it = exceptions_.find(word); it != exceptions_.end()) {
    if (it->second == word) return false;
    word = it->second;
    return true;
  }
  for (const auto& rule : rules_) {
    if (!ends_with(word, rule.suffix)) continue;
    const bool guarded = std::any_of(
        rule.keep.begin(), rule.keep.end(),
        [&](const std::string& k) { return ends_with(word, k); });
    if (guarded) continue;
    std::string stem = word.substr(0, word.size() - rule.suffix.size());
    if (!viable_stem(stem)) continue;
    if (rule.repair) stem = repair(std::move(stem));
    stem += rule.replacement;
    if (stem == word) return false;
    word = std::move(stem);
    return true;
  }
  return false;
}

std::string Lemmatizer::lemma(std::string_view word) const {
  std::string w(word);
  for (int i = 0; i < kMaxSteps && step(w); ++i) {
  }
  return w;
}

std::string Lemmatizer::lemmatize(std::string_view phrase) const {
  // Normalize characters: keep alnum, intra-word '-' and '/', map the rest
  // to spaces, then collapse runs of spaces.
  const std::string lower = to_lower_ascii(phrase);
  std::string cleaned;
  cleaned.reserve(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const char c = lower[i];
    if (is_alnum_ascii(c)) {
      cleaned.push_back(c);
    } else if ((c == '-' || c == '/') && i > 0 && i + 1 < lower.size() &&
               is_alnum_ascii(lower[i - 1]) && is_alnum_ascii(lower[i + 1])) {
      cleaned.push_back(c);
    } else if (!cleaned.empty() && cleaned.back() != ' ') {
      cleaned.push_back(' ');
    }
  }
  while (!cleaned.empty() && cleaned.back() == ' ') cleaned.pop_back();

  std::string out;
  out.reserve(cleaned.size());
  std::size_t i = 0;
  while (i < cleaned.size()) {
    if (!is_alpha_ascii(cleaned[i])) {
      out.push_back(cleaned[i]);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cleaned.size() && is_alnum_ascii(cleaned[j])) ++j;
    const std::string_view piece(cleaned.data() + i, j - i);
    const bool alphabetic = std::all_of(piece.begin(), piece.end(), is_alpha_ascii);
    out += alphabetic ? lemma(piece) : std::string(piece);
    i = j;
  }
  return out;
}

}  // namespace cxrlabel

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

#ifndef CXRLABEL_LEMMATIZER_HPP_
#define CXRLABEL_LEMMATIZER_HPP_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cxrlabel {

// Rule-based English lemmatizer: an exception dictionary plus ordered suffix
// rewrite rules. See data/lemma_rules.txt for the table format.
class Lemmatizer {
 public:
  // Parses a rules table; throws Error(kConfigError) naming the line.
  static Lemmatizer parse(std::string_view rules_text);
  static Lemmatizer from_file(const std::string& path);
  // The shipped table.
  static const Lemmatizer& builtin();

  // Lowercases, strips punctuation except hyphens and slashes between two
  // alphanumerics, collapses whitespace and lemmatizes each alphabetic piece.
  // Idempotent: lemmatize(lemmatize(x)) == lemmatize(x).
  std::string lemmatize(std::string_view phrase) const;

  // Lemma of a single lowercase alphabetic word.
  std::string lemma(std::string_view word) const;

 private:
  struct Rule {
    std::string suffix;
    std::string replacement;
    bool repair = false;
    std::vector<std::string> keep;
  };
  struct Ending {
    std::string pattern;  // 'C' matches any consonant
    bool negative = false;
  };

  // One rewrite step; returns false when no exception or rule applies.
  bool step(std::string& word) const;
  std::string repair(std::string stem) const;

  std::unordered_map<std::string, std::string> exceptions_;
  std::vector<Rule> rules_;
  std::vector<Ending> restore_e_;
  std::string keep_double_;
};

}  // namespace cxrlabel

#endif  // CXRLABEL_LEMMATIZER_HPP_

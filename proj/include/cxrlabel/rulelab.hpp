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

#ifndef CXRLABEL_RULELAB_HPP_
#define CXRLABEL_RULELAB_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cxrlabel/chexmap.hpp"
#include "cxrlabel/types.hpp"

namespace cxrlabel {

using CuePhrase = std::vector<std::string>;  // lowercase tokens

// Cue vocabulary for assertion classification. Plain-text format with
// sections [pre_negation], [post_negation], [uncertainty], [scope_break]
// (one phrase per line) and [window] ('pre N' / 'post N').
struct CueLexicon {
  std::vector<CuePhrase> pre_negation;
  std::vector<CuePhrase> post_negation;
  std::vector<CuePhrase> uncertainty;
  std::vector<CuePhrase> scope_break;
  std::size_t pre_window = 6;
  std::size_t post_window = 3;

  // Throws Error(kConfigError) naming the line for unknown sections,
  // malformed windows, a window below 1, or a phrase listed under more than
  // one cue section.
  static CueLexicon parse(std::string_view text);
  static CueLexicon from_file(const std::filesystem::path& path);
  static const CueLexicon& builtin();
};

struct Token {
  std::string text;  // lowercase
  CharRange span;
};

// Lowercase alphanumeric runs of `text`.
std::vector<Token> tokenize(std::string_view text);

// Category mentions in free text, with character spans into `text`.
std::vector<CategoryMatch> detect_mentions(const Matcher& matcher,
                                           std::string_view text);

// Status of the mention at `span`. Cues are searched in a token window
// around the mention that never crosses a sentence end, ';', a blank line,
// or a scope-break phrase: an uncertainty cue anywhere in the window gives
// Uncertain; otherwise a pre-negation cue ending at or before the mention
// end, or a post-negation cue starting at or after the mention start, gives
// Negative; otherwise Positive.
AssertionStatus classify_assertion(const CueLexicon& lexicon,
                                   std::string_view text, CharRange span);

struct LabeledMention {
  DiseaseCategory category;
  CharRange span;
  AssertionStatus status;
};

class Labeler {
 public:
  Labeler(const Matcher& matcher, const CueLexicon& lexicon)
      : matcher_(&matcher), lexicon_(&lexicon) {}

  std::vector<LabeledMention> mentions(std::string_view text) const;
  // Precedence-combined statuses per category with NoFindings derived.
  StatusVector label(std::string_view text) const;

 private:
  const Matcher* matcher_;
  const CueLexicon* lexicon_;
};

}  // namespace cxrlabel

#endif  // CXRLABEL_RULELAB_HPP_

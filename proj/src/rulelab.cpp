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

#include "cxrlabel/rulelab.hpp"

#include <algorithm>
#include <map>
#include <cctype>

#include "cxrlabel/builtin_data.hpp"
#include "cxrlabel/error.hpp"
#include "cxrlabel/text_util.hpp"

namespace cxrlabel {
namespace {

CuePhrase phrase_tokens(std::string_view line) {
  CuePhrase out;
  for (auto& t : tokenize(line)) out.push_back(std::move(t.text));
  return out;
}

// Tokens of one text with a scope id per token. Scope ids change at
// sentence ends, ';', blank lines and at the start of each scope-break
// phrase.
class Scan {
 public:
  Scan(const CueLexicon& lex, std::string_view text) : lex_(lex) {
    tokens_ = tokenize(text);
    sentence_.assign(tokens_.size(), 0);
    for (std::size_t i = 1; i < tokens_.size(); ++i) {
      sentence_[i] = sentence_[i - 1] +
                     (breaks_sentence(text, tokens_[i - 1].span.end, tokens_[i].span.begin) ? 1 : 0);
    }
    scope_.assign(tokens_.size(), 0);
    std::size_t id = 0;
    for (std::size_t i = 1; i < tokens_.size(); ++i) {
      if (sentence_[i] != sentence_[i - 1] || starts_any(lex.scope_break, i)) ++id;
      scope_[i] = id;
    }
  }

  AssertionStatus classify(CharRange span) const {
    std::size_t ms = tokens_.size(), me = 0;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].span.end > span.begin && tokens_[i].span.begin < span.end) {
        ms = std::min(ms, i);
        me = i + 1;
      }
    }
    if (ms >= me) return AssertionStatus::kPositive;

    std::size_t lo = ms;
    while (lo > 0 && scope_[lo - 1] == scope_[ms]) --lo;
    std::size_t hi = me;
    while (hi < tokens_.size() && scope_[hi] == scope_[me - 1]) ++hi;

    const std::size_t pre_lo = std::max(lo, ms >= lex_.pre_window ? ms - lex_.pre_window : 0);
    const std::size_t post_hi = std::min(hi, me + lex_.post_window);

    if (any_within(lex_.uncertainty, pre_lo, post_hi)) return AssertionStatus::kUncertain;
    if (any_within(lex_.pre_negation, pre_lo, me)) return AssertionStatus::kNegative;
    if (any_within(lex_.post_negation, ms, post_hi)) return AssertionStatus::kNegative;
    return AssertionStatus::kPositive;
  }

 private:
  static bool breaks_sentence(std::string_view text, std::size_t from, std::size_t to) {
    bool newline = false;
    for (std::size_t i = from; i < to; ++i) {
      const char c = text[i];
      if (c == '!' || c == '?' || c == ';') return true;
      if (c == '.') {
        // A decimal point joins two digits.
        const bool decimal = i == from && i + 1 == to && i > 0 && i + 1 < text.size() &&
                             std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                             std::isdigit(static_cast<unsigned char>(text[i + 1]));
        if (!decimal) return true;
      }
      if (c == '\n') {
        if (newline) return true;
        newline = true;
      } else if (!is_space_ascii(c)) {
        newline = false;
      }
    }
    return false;
  }

  bool matches_at(const CuePhrase& cue, std::size_t at) const {
    if (at + cue.size() > tokens_.size()) return false;
    for (std::size_t k = 0; k < cue.size(); ++k) {
      if (tokens_[at + k].text != cue[k]) return false;
    }
    // A cue never spans a sentence boundary.
    return sentence_[at] == sentence_[at + cue.size() - 1];
  }

  bool starts_any(const std::vector<CuePhrase>& cues, std::size_t at) const {
    for (const auto& c : cues) {
      if (matches_at(c, at)) return true;
    }
    return false;
  }

  bool any_within(const std::vector<CuePhrase>& cues, std::size_t lo, std::size_t hi) const {
    for (std::size_t p = lo; p < hi; ++p) {
      for (const auto& c : cues) {
        if (p + c.size() <= hi && matches_at(c, p)) return true;
      }
    }
    return false;
  }

  const CueLexicon& lex_;
  std::vector<Token> tokens_;
  std::vector<std::size_t> sentence_;
  std::vector<std::size_t> scope_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_alnum_ascii(text[i])) {
      ++i;
      continue;
    }
    const std::size_t b = i;
    while (i < text.size() && is_alnum_ascii(text[i])) ++i;
    out.push_back(Token{to_lower_ascii(text.substr(b, i - b)), CharRange{b, i}});
  }
  return out;
}

CueLexicon CueLexicon::parse(std::string_view text) {
  CueLexicon lex;
  enum class Sec { kNone, kPre, kPost, kUnc, kBreak, kWindow } sec = Sec::kNone;
  std::map<CuePhrase, std::string> owner;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const std::string where = "lexicon line " + std::to_string(line_no);
    auto line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line == "[pre_negation]") sec = Sec::kPre;
      else if (line == "[post_negation]") sec = Sec::kPost;
      else if (line == "[uncertainty]") sec = Sec::kUnc;
      else if (line == "[scope_break]") sec = Sec::kBreak;
      else if (line == "[window]") sec = Sec::kWindow;
      else throw Error(ErrorCode::kConfigError, where + ": unknown section " + std::string(line));
      continue;
    }
    if (sec == Sec::kNone) {
      throw Error(ErrorCode::kConfigError, where + ": entry outside any section");
    }
    if (sec == Sec::kWindow) {
      auto parts = split(line, ' ');
      std::vector<std::string_view> words;
      for (auto p : parts) {
        if (!trim(p).empty()) words.push_back(trim(p));
      }
      std::size_t value = 0;
      bool ok = words.size() == 2 && !words[1].empty() &&
                std::all_of(words[1].begin(), words[1].end(),
                            [](char c) { return c >= '0' && c <= '9'; }) &&
                words[1].size() < 6;
      if (ok) value = std::stoul(std::string(words[1]));
      if (!ok || (words[0] != "pre" && words[0] != "post")) {
        throw Error(ErrorCode::kConfigError, where + ": expected 'pre N' or 'post N'");
      }
      if (value < 1) throw Error(ErrorCode::kConfigError, where + ": window must be at least 1");
      if (words[0] == "pre") {
        lex.pre_window = value;
      } else {
        lex.post_window = value;
      }
      continue;
    }
    CuePhrase cue = phrase_tokens(line);
    if (cue.empty()) throw Error(ErrorCode::kConfigError, where + ": cue has no words");
    const char* name = sec == Sec::kPre    ? "pre_negation"
                       : sec == Sec::kPost ? "post_negation"
                       : sec == Sec::kUnc  ? "uncertainty"
                                           : "scope_break";
    auto [it, fresh] = owner.emplace(cue, name);
    if (!fresh) {
      if (it->second == name) continue;
      throw Error(ErrorCode::kConfigError, where + ": '" + std::string(line) +
                                               "' is listed under both " + it->second +
                                               " and " + name);
    }
    auto& list = sec == Sec::kPre    ? lex.pre_negation
                 : sec == Sec::kPost ? lex.post_negation
                 : sec == Sec::kUnc  ? lex.uncertainty
                                     : lex.scope_break;
    list.push_back(std::move(cue));
  }
  return lex;
}

CueLexicon CueLexicon::from_file(const std::filesystem::path& path) {
  try {
    return parse(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

const CueLexicon& CueLexicon::builtin() {
  static const CueLexicon lex = parse(builtin_lexicon());
  return lex;
}

std::vector<CategoryMatch> detect_mentions(const Matcher& matcher, std::string_view text) {
  return matcher.find_all(to_lower_ascii(text));
}

AssertionStatus classify_assertion(const CueLexicon& lexicon, std::string_view text,
                                   CharRange span) {
  return Scan(lexicon, text).classify(span);
}

std::vector<LabeledMention> Labeler::mentions(std::string_view text) const {
  std::vector<LabeledMention> out;
  const auto found = detect_mentions(*matcher_, text);
  if (found.empty()) return out;
  const Scan scan(*lexicon_, text);
  out.reserve(found.size());
  for (const auto& m : found) out.push_back({m.category, m.span, scan.classify(m.span)});
  return out;
}

StatusVector Labeler::label(std::string_view text) const {
  std::vector<std::pair<DiseaseCategory, AssertionStatus>> evidence;
  for (const auto& m : mentions(text)) evidence.emplace_back(m.category, m.status);
  return reduce_statuses(evidence);
}

}  // namespace cxrlabel

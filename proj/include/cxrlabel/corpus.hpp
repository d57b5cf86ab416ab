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

#ifndef CXRLABEL_CORPUS_HPP_
#define CXRLABEL_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cxrlabel/types.hpp"

namespace cxrlabel {

enum class Sex : std::uint8_t { kMale, kFemale, kUnknown };

std::string_view to_string(Sex sex);
// Accepts M/F/male/female in any case; anything else is kUnknown.
Sex parse_sex(std::string_view text);
// Nonnegative integer months; anything unparseable yields nullopt.
std::optional<std::uint32_t> parse_age_months(std::string_view text);

struct ReportMeta {
  std::optional<std::uint32_t> age_months;
  Sex sex = Sex::kUnknown;
};

// One section of a report. `range` covers the header line and body so that
// concatenating all ranges in order reproduces the report text; `body_begin`
// points past the header label and its delimiter.
struct Section {
  SectionKind kind = SectionKind::kPreamble;
  CharRange range;
  std::size_t body_begin = 0;
};

struct Report {
  std::string exam_id;
  ReportMeta meta;
  std::string raw_text;
  std::vector<Section> sections;  // ordered by position, non-overlapping

  // First section of the given kind, if present.
  const Section* find(SectionKind kind) const;
  bool has(SectionKind kind) const { return find(kind) != nullptr; }
  // Trimmed body text of every section of `kind`, joined by '\n'.
  std::string body(SectionKind kind) const;
  std::string_view slice(const Section& section) const;
};

// Header spellings recognised at line start (case-insensitive).
class HeaderTable {
 public:
  static const HeaderTable& defaults();

  void add(std::string spelling, SectionKind kind);
  // Longest spelling matching the start of `line`, with its length.
  std::optional<std::pair<SectionKind, std::size_t>> match(
      std::string_view line) const;

 private:
  std::vector<std::pair<std::string, SectionKind>> entries_;  // longest first
};

// Splits text into sections by scanning for header lines. A header is a
// known spelling at line start (leading blanks allowed) followed by ':',
// by " -"/"-" and whitespace, or by the end of the line. Every header opens
// a new section, so a kind may occur more than once. Text before the first header is the
// Preamble; text with no headers at all becomes a single Findings section.
// Throws Error(kEmptyReport) on empty text.
Report parse_report(std::string exam_id, ReportMeta meta, std::string text,
                    const HeaderTable& headers = HeaderTable::defaults());

struct LoadError {
  std::size_t row = 0;  // 1-based manifest line
  std::string exam_id;
  std::string message;
};

struct CorpusLoad {
  std::vector<Report> reports;  // manifest order
  std::vector<LoadError> errors;
};

// Reads a manifest CSV (`exam_id,age_months,sex,path`, paths relative to the
// manifest directory) and parses every referenced report. Unreadable report
// files become LoadErrors; a missing manifest throws kIoError, a malformed
// header kConfigError, and a duplicate exam_id kDuplicateExam.
CorpusLoad load_corpus(const std::filesystem::path& manifest,
                       unsigned threads = 1,
                       const HeaderTable& headers = HeaderTable::defaults());

}  // namespace cxrlabel

#endif  // CXRLABEL_CORPUS_HPP_

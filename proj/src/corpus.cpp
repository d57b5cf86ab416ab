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

#include "cxrlabel/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "cxrlabel/csv.hpp"
#include "cxrlabel/error.hpp"
#include "cxrlabel/parallel.hpp"
#include "cxrlabel/text_util.hpp"

namespace cxrlabel {

std::string_view to_string(Sex sex) {
  switch (sex) {
    case Sex::kMale:
      return "male";
    case Sex::kFemale:
      return "female";
    case Sex::kUnknown:
      break;
  }
  return "unknown";
}

Sex parse_sex(std::string_view text) {
  const auto t = trim(text);
  if (iequals(t, "m") || iequals(t, "male")) return Sex::kMale;
  if (iequals(t, "f") || iequals(t, "female")) return Sex::kFemale;
  return Sex::kUnknown;
}

std::optional<std::uint32_t> parse_age_months(std::string_view text) {
  const auto t = trim(text);
  if (t.empty()) return std::nullopt;
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

const Section* Report::find(SectionKind kind) const {
  for (const auto& s : sections) {
    if (s.kind == kind) return &s;
  }
  return nullptr;
}

std::string_view Report::slice(const Section& section) const {
  return std::string_view(raw_text)
      .substr(section.range.begin, section.range.size());
}

std::string Report::body(SectionKind kind) const {
  std::string out;
  bool first = true;
  for (const auto& s : sections) {
    if (s.kind != kind) continue;
    const auto text = trim(std::string_view(raw_text).substr(
        s.body_begin, s.range.end - s.body_begin));
    if (!first) out.push_back('\n');
    out.append(text);
    first = false;
  }
  return out;
}

const HeaderTable& HeaderTable::defaults() {
  static const HeaderTable table = [] {
    HeaderTable t;
    t.add("clinical history", SectionKind::kClinicalHistory);
    t.add("history", SectionKind::kClinicalHistory);
    t.add("indication", SectionKind::kClinicalHistory);
    t.add("indications", SectionKind::kClinicalHistory);
    t.add("clinical indication", SectionKind::kClinicalHistory);
    t.add("reason for exam", SectionKind::kClinicalHistory);
    t.add("comparison", SectionKind::kComparison);
    t.add("comparisons", SectionKind::kComparison);
    t.add("findings", SectionKind::kFindings);
    t.add("finding", SectionKind::kFindings);
    t.add("impression", SectionKind::kImpression);
    t.add("impressions", SectionKind::kImpression);
    t.add("conclusion", SectionKind::kImpression);
    t.add("procedure comments", SectionKind::kProcedureComments);
    t.add("procedure comment", SectionKind::kProcedureComments);
    t.add("technique", SectionKind::kProcedureComments);
    return t;
  }();
  return table;
}

void HeaderTable::add(std::string spelling, SectionKind kind) {
  entries_.emplace_back(to_lower_ascii(spelling), kind);
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
}

std::optional<std::pair<SectionKind, std::size_t>> HeaderTable::match(
    std::string_view line) const {
  for (const auto& [spelling, kind] : entries_) {
    if (line.size() >= spelling.size() &&
        iequals(line.substr(0, spelling.size()), spelling)) {
      return std::make_pair(kind, spelling.size());
    }
  }
  return std::nullopt;
}

namespace {

struct HeaderHit {
  SectionKind kind;
  std::size_t line_begin;
  std::size_t body_begin;
};

// Returns the body offset if `line` (starting at `offset`) is a header.
std::optional<HeaderHit> match_header(std::string_view text,
                                      std::size_t offset,
                                      std::size_t line_end,
                                      const HeaderTable& headers) {
  std::size_t p = offset;
  while (p < line_end && (text[p] == ' ' || text[p] == '\t')) ++p;
  auto hit = headers.match(text.substr(p, line_end - p));
  if (!hit) return std::nullopt;
  p += hit->second;
  while (p < line_end && (text[p] == ' ' || text[p] == '\t')) ++p;
  if (p < line_end && text[p] == '\r' && p + 1 == line_end) ++p;
  if (p < line_end) {
    if (text[p] == ':') {
      ++p;
    } else if (text[p] == '-' &&
               (p + 1 == line_end || is_space_ascii(text[p + 1]))) {
      ++p;
    } else {
      return std::nullopt;
    }
  }
  return HeaderHit{hit->first, offset, p};
}

}  // namespace

Report parse_report(std::string exam_id, ReportMeta meta, std::string text,
                    const HeaderTable& headers) {
  if (text.empty()) {
    throw Error(ErrorCode::kEmptyReport, "report " + exam_id + " is empty");
  }
  Report report;
  report.exam_id = std::move(exam_id);
  report.meta = meta;
  report.raw_text = std::move(text);
  const std::string_view view(report.raw_text);

  std::vector<HeaderHit> hits;
  std::size_t line_begin = 0;
  while (line_begin < view.size()) {
    std::size_t line_end = view.find('\n', line_begin);
    if (line_end == std::string_view::npos) line_end = view.size();
    if (auto hit = match_header(view, line_begin, line_end, headers)) {
      hits.push_back(*hit);
    }
    line_begin = line_end + 1;
  }

  if (hits.empty()) {
    report.sections.push_back(
        Section{SectionKind::kFindings, CharRange{0, view.size()}, 0});
    return report;
  }
  if (hits.front().line_begin > 0) {
    report.sections.push_back(Section{SectionKind::kPreamble,
                                      CharRange{0, hits.front().line_begin},
                                      0});
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const std::size_t end =
        i + 1 < hits.size() ? hits[i + 1].line_begin : view.size();
    std::size_t body = hits[i].body_begin;
    while (body < end && is_space_ascii(view[body])) ++body;
    report.sections.push_back(
        Section{hits[i].kind, CharRange{hits[i].line_begin, end}, body});
  }
  return report;
}

CorpusLoad load_corpus(const std::filesystem::path& manifest, unsigned threads,
                       const HeaderTable& headers) {
  if (!std::filesystem::exists(manifest)) {
    throw Error(ErrorCode::kIoError,
                "manifest not found: " + manifest.string());
  }
  const auto rows = csv::parse(read_file(manifest));
  if (rows.empty()) {
    throw Error(ErrorCode::kConfigError,
                "manifest has no header: " + manifest.string());
  }

  const auto& header = rows.front().fields;
  auto column = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw Error(ErrorCode::kConfigError, "manifest " + manifest.string() +
                                             " lacks column '" +
                                             std::string(name) + "'");
  };
  const std::size_t c_id = column("exam_id");
  const std::size_t c_age = column("age_months");
  const std::size_t c_sex = column("sex");
  const std::size_t c_path = column("path");
  const std::size_t width = std::max({c_id, c_age, c_sex, c_path}) + 1;

  const auto base = manifest.parent_path();
  struct Pending {
    std::size_t line;
    std::string exam_id;
    ReportMeta meta;
    std::filesystem::path path;
  };
  std::vector<Pending> pending;
  CorpusLoad result;
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() < width) {
      result.errors.push_back(
          {rows[r].line, f.empty() ? "" : f[0], "too few columns"});
      continue;
    }
    std::string id(trim(f[c_id]));
    if (id.empty()) {
      result.errors.push_back({rows[r].line, "", "empty exam_id"});
      continue;
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kDuplicateExam,
                  "duplicate exam_id '" + id + "' on manifest line " +
                      std::to_string(rows[r].line));
    }
    std::filesystem::path p(std::string(trim(f[c_path])));
    if (p.is_relative()) p = base / p;
    pending.push_back({rows[r].line, std::move(id),
                       ReportMeta{parse_age_months(f[c_age]), parse_sex(f[c_sex])},
                       std::move(p)});
  }

  std::vector<std::optional<Report>> parsed(pending.size());
  std::vector<std::string> failures(pending.size());
  parallel_for(pending.size(), threads, [&](std::size_t i) {
    try {
      parsed[i] = parse_report(pending[i].exam_id, pending[i].meta,
                               read_file(pending[i].path), headers);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (parsed[i]) {
      result.reports.push_back(std::move(*parsed[i]));
    } else {
      result.errors.push_back(
          {pending[i].line, pending[i].exam_id, failures[i]});
    }
  }
  std::stable_sort(result.errors.begin(), result.errors.end(),
                   [](const LoadError& a, const LoadError& b) {
                     return a.row < b.row;
                   });
  return result;
}

}  // namespace cxrlabel

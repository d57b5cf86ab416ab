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

#include "cxrlabel/label_matrix.hpp"

#include <set>
#include <sstream>

#include "cxrlabel/csv.hpp"
#include "cxrlabel/error.hpp"
#include "cxrlabel/text_util.hpp"

namespace cxrlabel {

LabelMatrix::LabelMatrix(std::vector<std::string> exam_ids,
                         std::vector<SystemId> systems)
    : exam_ids_(std::move(exam_ids)), systems_(std::move(systems)) {
  exam_lookup_.reserve(exam_ids_.size());
  for (std::size_t i = 0; i < exam_ids_.size(); ++i) {
    if (!exam_lookup_.emplace(exam_ids_[i], i).second) {
      throw Error(ErrorCode::kDuplicateExam, "exam id repeated: " + exam_ids_[i]);
    }
  }
  std::set<SystemId> seen;
  for (const auto& s : systems_) {
    if (!seen.insert(s).second) {
      throw Error(ErrorCode::kRegistryError, "system listed twice: " + s);
    }
  }
  cells_.assign(systems_.size() * kCategoryCount * exam_ids_.size(),
                static_cast<std::uint8_t>(AssertionStatus::kAbsent));
}

std::optional<std::size_t> LabelMatrix::exam_index(std::string_view exam_id) const {
  auto it = exam_lookup_.find(std::string(exam_id));
  if (it == exam_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LabelMatrix::system_index(const SystemId& system) const {
  for (std::size_t i = 0; i < systems_.size(); ++i) {
    if (systems_[i] == system) return i;
  }
  return std::nullopt;
}

std::size_t LabelMatrix::require_system(const SystemId& system) const {
  auto s = system_index(system);
  if (!s) throw Error(ErrorCode::kRegistryError, "system not in matrix: " + system);
  return *s;
}

AssertionStatus LabelMatrix::at(std::size_t system, DiseaseCategory category,
                                std::size_t exam) const {
  return static_cast<AssertionStatus>(cells_[offset(system, category) + exam]);
}

void LabelMatrix::set(std::size_t system, DiseaseCategory category,
                      std::size_t exam, AssertionStatus status) {
  cells_[offset(system, category) + exam] = static_cast<std::uint8_t>(status);
}

StatusVector LabelMatrix::row(std::size_t system, std::size_t exam) const {
  StatusVector v;
  for (std::size_t c = 0; c < kCategoryCount; ++c) v[c] = at(system, category_at(c), exam);
  return v;
}

void LabelMatrix::set_row(std::size_t system, std::size_t exam, const StatusVector& row) {
  for (std::size_t c = 0; c < kCategoryCount; ++c) set(system, category_at(c), exam, row[c]);
}

std::span<const std::uint8_t> LabelMatrix::lane(std::size_t system,
                                                DiseaseCategory category) const {
  return {cells_.data() + offset(system, category), exam_ids_.size()};
}

std::string format_slice(const LabelSlice& slice) {
  std::string out = "# cxrlabel system=" + slice.system;
  for (const auto& [k, v] : slice.meta) {
    if (k == "system") continue;
    out += " " + k + "=" + v;
  }
  out += '\n';
  std::vector<std::string> header{"exam_id"};
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    header.emplace_back(to_string(category_at(c)));
  }
  out += csv::format_row(header);
  for (std::size_t e = 0; e < slice.exam_ids.size(); ++e) {
    std::vector<std::string> fields{slice.exam_ids[e]};
    for (auto s : slice.rows[e]) fields.emplace_back(to_string(s));
    out += csv::format_row(fields);
  }
  return out;
}

LabelSlice parse_slice(std::string_view text, const SystemId& fallback_system) {
  LabelSlice slice;
  slice.system = fallback_system;
  // Metadata lives on the first comment line; csv::parse skips comments.
  std::string_view first = text.substr(0, text.find('\n'));
  if (first.rfind("# cxrlabel", 0) == 0) {
    std::istringstream words{std::string(first.substr(10))};
    std::string w;
    while (words >> w) {
      const auto eq = w.find('=');
      if (eq == std::string::npos) continue;
      slice.meta[w.substr(0, eq)] = w.substr(eq + 1);
    }
    if (auto it = slice.meta.find("system"); it != slice.meta.end()) {
      slice.system = it->second;
      slice.meta.erase(it);
    }
  }
  if (slice.system.empty()) {
    throw Error(ErrorCode::kConfigError, "label slice names no system");
  }

  const auto rows = csv::parse(text);
  if (rows.empty()) throw Error(ErrorCode::kConfigError, "label slice has no header");
  const auto& header = rows.front();
  if (header.fields.size() != kCategoryCount + 1 || header.fields[0] != "exam_id") {
    throw Error(ErrorCode::kConfigError,
                "line " + std::to_string(header.line) +
                    ": expected header exam_id plus the 13 category names");
  }
  std::array<std::size_t, kCategoryCount> column{};
  std::set<std::size_t> assigned;
  for (std::size_t f = 1; f < header.fields.size(); ++f) {
    auto c = parse_category(header.fields[f]);
    if (!c || !assigned.insert(index_of(*c)).second) {
      throw Error(ErrorCode::kConfigError,
                  "line " + std::to_string(header.line) + ": bad category column '" +
                      header.fields[f] + "'");
    }
    column[index_of(*c)] = f;
  }

  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "line " + std::to_string(row.line);
    if (row.fields.size() != kCategoryCount + 1) {
      throw Error(ErrorCode::kConfigError, where + ": expected 14 fields");
    }
    if (row.fields[0].empty()) throw Error(ErrorCode::kConfigError, where + ": empty exam id");
    if (!seen.insert(row.fields[0]).second) {
      throw Error(ErrorCode::kDuplicateExam, where + ": exam id repeated: " + row.fields[0]);
    }
    StatusVector v;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      auto s = parse_status(row.fields[column[c]]);
      if (!s) {
        throw Error(ErrorCode::kConfigError,
                    where + ": unknown status '" + row.fields[column[c]] + "'");
      }
      v[c] = *s;
    }
    slice.exam_ids.push_back(row.fields[0]);
    slice.rows.push_back(v);
  }
  return slice;
}

LabelSlice read_slice(const std::filesystem::path& path, const SystemId& fallback_system) {
  try {
    return parse_slice(read_file(path), fallback_system);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

void write_slice(const std::filesystem::path& path, const LabelSlice& slice) {
  write_file(path, format_slice(slice));
}

LabelSlice slice_of(const LabelMatrix& matrix, std::size_t system) {
  LabelSlice s;
  s.system = matrix.systems().at(system);
  s.exam_ids = matrix.exam_ids();
  s.rows.reserve(matrix.exam_count());
  for (std::size_t e = 0; e < matrix.exam_count(); ++e) s.rows.push_back(matrix.row(system, e));
  return s;
}

LabelMatrix assemble(std::span<const LabelSlice> slices) {
  if (slices.empty()) throw Error(ErrorCode::kArityError, "no label slices to assemble");
  std::vector<SystemId> systems;
  for (const auto& s : slices) systems.push_back(s.system);
  LabelMatrix m(slices.front().exam_ids, systems);

  std::set<std::string> mismatched;
  for (std::size_t s = 0; s < slices.size(); ++s) {
    std::vector<bool> covered(m.exam_count(), false);
    for (std::size_t r = 0; r < slices[s].exam_ids.size(); ++r) {
      auto e = m.exam_index(slices[s].exam_ids[r]);
      if (!e) {
        mismatched.insert(slices[s].exam_ids[r]);
        continue;
      }
      covered[*e] = true;
      m.set_row(s, *e, slices[s].rows[r]);
    }
    for (std::size_t e = 0; e < covered.size(); ++e) {
      if (!covered[e]) mismatched.insert(m.exam_ids()[e]);
    }
  }
  if (!mismatched.empty()) {
    std::string list;
    for (const auto& id : mismatched) list += (list.empty() ? "" : ", ") + id;
    throw Error(ErrorCode::kCoverageMismatch, "slices cover different exams: " + list);
  }
  return m;
}

}  // namespace cxrlabel

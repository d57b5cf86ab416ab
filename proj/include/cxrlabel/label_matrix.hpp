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

#ifndef CXRLABEL_LABEL_MATRIX_HPP_
#define CXRLABEL_LABEL_MATRIX_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cxrlabel/adapters.hpp"
#include "cxrlabel/types.hpp"

namespace cxrlabel {

// Dense (system, category, exam) cube of statuses, Absent by default.
// Storage is exam-contiguous per (system, category) lane so that per-lane
// comparisons run over flat byte arrays.
class LabelMatrix {
 public:
  LabelMatrix() = default;
  // Throws Error(kDuplicateExam) or Error(kRegistryError) on repeated ids.
  LabelMatrix(std::vector<std::string> exam_ids, std::vector<SystemId> systems);

  std::size_t exam_count() const { return exam_ids_.size(); }
  std::size_t system_count() const { return systems_.size(); }
  const std::vector<std::string>& exam_ids() const { return exam_ids_; }
  const std::vector<SystemId>& systems() const { return systems_; }

  std::optional<std::size_t> exam_index(std::string_view exam_id) const;
  std::optional<std::size_t> system_index(const SystemId& system) const;
  // Throws Error(kRegistryError) for an unknown system.
  std::size_t require_system(const SystemId& system) const;

  AssertionStatus at(std::size_t system, DiseaseCategory category,
                     std::size_t exam) const;
  void set(std::size_t system, DiseaseCategory category, std::size_t exam,
           AssertionStatus status);
  StatusVector row(std::size_t system, std::size_t exam) const;
  void set_row(std::size_t system, std::size_t exam, const StatusVector& row);

  // Status bytes of one (system, category) lane, one per exam.
  std::span<const std::uint8_t> lane(std::size_t system,
                                     DiseaseCategory category) const;

 private:
  std::size_t offset(std::size_t system, DiseaseCategory category) const {
    return (system * kCategoryCount + index_of(category)) * exam_ids_.size();
  }

  std::vector<std::string> exam_ids_;
  std::vector<SystemId> systems_;
  std::unordered_map<std::string, std::size_t> exam_lookup_;
  std::vector<std::uint8_t> cells_;
};

// One system's labels for a set of exams, as stored on disk.
struct LabelSlice {
  SystemId system;
  std::vector<std::string> exam_ids;
  std::vector<StatusVector> rows;
  // Provenance recorded in the leading comment line (sections, vote, ...).
  std::map<std::string, std::string> meta;
};

// Slice CSV: a '# cxrlabel system=<id> key=value ...' line, then the header
// 'exam_id,<13 category names>', then one row of status names per exam.
std::string format_slice(const LabelSlice& slice);
// Throws Error(kConfigError) naming the line for any malformed content and
// Error(kDuplicateExam) for a repeated exam id. `fallback_system` is used
// when the file has no system= entry.
LabelSlice parse_slice(std::string_view text, const SystemId& fallback_system = "");
LabelSlice read_slice(const std::filesystem::path& path,
                      const SystemId& fallback_system = "");
void write_slice(const std::filesystem::path& path, const LabelSlice& slice);

LabelSlice slice_of(const LabelMatrix& matrix, std::size_t system);

// Stacks slices into one cube in the order given. Every slice must cover the
// same exam set (any order); otherwise Error(kCoverageMismatch) lists the
// offending exams. Exam order follows the first slice.
LabelMatrix assemble(std::span<const LabelSlice> slices);

}  // namespace cxrlabel

#endif  // CXRLABEL_LABEL_MATRIX_HPP_

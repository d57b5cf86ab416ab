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

#ifndef CXRLABEL_TYPES_HPP_
#define CXRLABEL_TYPES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace cxrlabel {

// Contextual polarity of a disease label. Absent is only produced at the
// label level ("system did not report this category"), never by assertion
// standardization of an entity.
enum class AssertionStatus : std::uint8_t {
  kPositive = 0,
  kNegative = 1,
  kUncertain = 2,
  kAbsent = 3,
};

inline constexpr std::size_t kStatusCount = 4;

inline constexpr std::array<AssertionStatus, kStatusCount> kAllStatuses = {
    AssertionStatus::kPositive, AssertionStatus::kNegative,
    AssertionStatus::kUncertain, AssertionStatus::kAbsent};

std::string_view to_string(AssertionStatus status);
std::optional<AssertionStatus> parse_status(std::string_view name);

// Combines two mention statuses for the same category.
// Order: Absent < Negative < Uncertain < Positive.
AssertionStatus combine(AssertionStatus a, AssertionStatus b);

enum class DiseaseCategory : std::uint8_t {
  kEnlargedCardiomediastinum = 0,
  kCardiomegaly,
  kLungOpacity,
  kLungLesion,
  kEdema,
  kConsolidation,
  kPneumonia,
  kAtelectasis,
  kPneumothorax,
  kPleuralEffusion,
  kPleuralOther,
  kFracture,
  kNoFindings,
};

inline constexpr std::size_t kCategoryCount = 13;
// The first twelve categories are diseases; NoFindings is derived from them.
inline constexpr std::size_t kDiseaseCount = 12;

inline constexpr DiseaseCategory category_at(std::size_t index) {
  return static_cast<DiseaseCategory>(index);
}
inline constexpr std::size_t index_of(DiseaseCategory category) {
  return static_cast<std::size_t>(category);
}

std::string_view to_string(DiseaseCategory category);
std::optional<DiseaseCategory> parse_category(std::string_view name);

using StatusVector = std::array<AssertionStatus, kCategoryCount>;

StatusVector all_absent();

enum class SectionKind : std::uint8_t {
  kPreamble = 0,
  kClinicalHistory,
  kComparison,
  kFindings,
  kImpression,
  kProcedureComments,
};

inline constexpr std::size_t kSectionCount = 6;

std::string_view to_string(SectionKind kind);
std::optional<SectionKind> parse_section(std::string_view name);

struct CharRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return end == begin; }
  friend bool operator==(const CharRange&, const CharRange&) = default;
};

}  // namespace cxrlabel

#endif  // CXRLABEL_TYPES_HPP_

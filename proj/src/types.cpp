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

#include "cxrlabel/types.hpp"

#include <algorithm>

namespace cxrlabel {
namespace {

constexpr std::array<std::string_view, kStatusCount> kStatusNames = {
    "Positive", "Negative", "Uncertain", "Absent"};

constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "EnlargedCardiomediastinum",
    "Cardiomegaly",
    "LungOpacity",
    "LungLesion",
    "Edema",
    "Consolidation",
    "Pneumonia",
    "Atelectasis",
    "Pneumothorax",
    "PleuralEffusion",
    "PleuralOther",
    "Fracture",
    "NoFindings",
};

constexpr std::array<std::string_view, kSectionCount> kSectionNames = {
    "Preamble", "ClinicalHistory", "Comparison",
    "Findings", "Impression",      "ProcedureComments"};

// Precedence rank used by combine().
constexpr int rank(AssertionStatus s) {
  switch (s) {
    case AssertionStatus::kAbsent:
      return 0;
    case AssertionStatus::kNegative:
      return 1;
    case AssertionStatus::kUncertain:
      return 2;
    case AssertionStatus::kPositive:
      return 3;
  }
  return 0;
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names,
                           std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<Enum>(it - names.begin());
}

}  // namespace

std::string_view to_string(AssertionStatus status) {
  return kStatusNames[static_cast<std::size_t>(status)];
}

std::optional<AssertionStatus> parse_status(std::string_view name) {
  return lookup<AssertionStatus>(kStatusNames, name);
}

AssertionStatus combine(AssertionStatus a, AssertionStatus b) {
  return rank(a) >= rank(b) ? a : b;
}

std::string_view to_string(DiseaseCategory category) {
  return kCategoryNames[index_of(category)];
}

std::optional<DiseaseCategory> parse_category(std::string_view name) {
  return lookup<DiseaseCategory>(kCategoryNames, name);
}

StatusVector all_absent() {
  StatusVector v;
  v.fill(AssertionStatus::kAbsent);
  return v;
}

std::string_view to_string(SectionKind kind) {
  return kSectionNames[static_cast<std::size_t>(kind)];
}

std::optional<SectionKind> parse_section(std::string_view name) {
  return lookup<SectionKind>(kSectionNames, name);
}

}  // namespace cxrlabel

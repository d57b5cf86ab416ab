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

#ifndef CXRLABEL_NORMALIZE_HPP_
#define CXRLABEL_NORMALIZE_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cxrlabel/adapters.hpp"
#include "cxrlabel/lemmatizer.hpp"
#include "cxrlabel/types.hpp"

namespace cxrlabel {

// Negation-confidence cut points: CS < positive_below is Positive,
// CS > negative_above is Negative, anything in between (inclusive) is
// Uncertain.
struct ConfidenceThresholds {
  double positive_below = 0.25;
  double negative_above = 0.75;
};

// Per-system translation of raw assertions into Positive/Negative/Uncertain.
class AssertionMap {
 public:
  // Tables for AWS, AZ, GC, SP and RULELAB.
  static AssertionMap builtin();

  // Throws Error(kConfigError) if a status is Absent or the system is
  // already mapped.
  void add_categorical(const SystemId& system,
                       std::map<std::string, AssertionStatus> table);
  // Throws Error(kConfigError) unless 0 < positive_below < negative_above < 1.
  void add_thresholds(const SystemId& system, ConfidenceThresholds thresholds);

  bool contains(const SystemId& system) const;

  // Exact-string lookup for categorical systems, interval test for threshold
  // systems. Throws UnmappedAssertion for an unknown categorical value,
  // Error(kRegistryError) for an unmapped system, and Error(kRangeError)
  // for a score outside [0,1] or a value of the wrong kind.
  AssertionStatus standardize(const SystemId& system,
                              const RawAssertion& raw) const;

  // The categorical vocabulary of a system (empty for threshold systems).
  std::vector<std::string> vocabulary(const SystemId& system) const;

 private:
  struct Entry {
    std::map<std::string, AssertionStatus> table;
    std::optional<ConfidenceThresholds> thresholds;
  };
  std::map<SystemId, Entry> entries_;
};

// Lemmatizes surface text and fills the standardized assertion of each
// mention in place. Mentions whose assertion cannot be standardized are
// removed and reported through the returned errors (raw value included).
struct NormalizeError {
  std::size_t index = 0;  // position in the input vector
  std::string message;
};
std::vector<NormalizeError> normalize_mentions(std::vector<EntityMention>& mentions,
                                               const AssertionMap& map,
                                               const Lemmatizer& lemmatizer);

// Row label used for aggregate descriptive rows.
inline constexpr std::string_view kAllSections = "AllSections";
inline constexpr std::string_view kFindingsImpression = "FindingsImpression";

struct DescriptiveRow {
  SystemId system;
  std::string section;  // SectionKind name, kAllSections or kFindingsImpression
  std::size_t total = 0;
  double mean_per_report = 0.0;
  double sd = 0.0;  // population standard deviation
  std::size_t unique = 0;
};

struct EntityDescriptives {
  std::size_t report_count = 0;
  std::vector<DescriptiveRow> rows;  // ordered by system, then section

  const DescriptiveRow* find(const SystemId& system,
                             std::string_view section) const;
};

// Per system: one row per SectionKind that has mentions, one AllSections
// row (mentions with UNKNOWN section included) and one FindingsImpression
// row. Per-report means count reports with zero mentions. Unique counts use
// normalized_text, falling back to lowercased surface text when empty.
// Throws Error(kOrphanExam) listing exam ids absent from `exam_ids`.
EntityDescriptives entity_descriptives(std::span<const EntityMention> mentions,
                                       std::span<const std::string> exam_ids,
                                       std::span<const SystemId> systems);

// Per-report entity counts for one system, in `exam_ids` order.
std::vector<double> per_report_counts(std::span<const EntityMention> mentions,
                                      std::span<const std::string> exam_ids,
                                      const SystemId& system);

}  // namespace cxrlabel

#endif  // CXRLABEL_NORMALIZE_HPP_

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

#ifndef CXRLABEL_CHEXMAP_HPP_
#define CXRLABEL_CHEXMAP_HPP_

#include <array>
#include <bitset>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cxrlabel/adapters.hpp"
#include "cxrlabel/pattern.hpp"
#include "cxrlabel/types.hpp"

namespace cxrlabel {

using CategorySet = std::bitset<kCategoryCount>;

std::vector<DiseaseCategory> to_list(const CategorySet& set);

// An anatomy term followed later in the same clause by an attribute, with
// no exclusion term in between or after it within that clause.
struct CompoundRule {
  std::vector<Pattern> anatomy;
  std::vector<Pattern> attributes;
  std::vector<Pattern> exclusions;
};

struct MappingRule {
  DiseaseCategory category = DiseaseCategory::kNoFindings;
  std::vector<Pattern> synonyms;
  std::vector<CompoundRule> compounds;
};

struct CategoryMatch {
  DiseaseCategory category;
  CharRange span;
  friend bool operator==(const CategoryMatch&, const CategoryMatch&) = default;
};

enum class SectionScope { kImpression, kFindingsImpression };

std::string_view to_string(SectionScope scope);
std::optional<SectionScope> parse_section_scope(std::string_view name);
bool in_scope(SectionScope scope, std::optional<SectionKind> section);

// Compiled, immutable category matcher. Safe to share across threads.
class Matcher {
 public:
  // Parses a JSON ruleset. Throws Error(kConfigError) for malformed JSON,
  // an unknown or derived category, an empty ruleset, or a pattern that
  // does not compile; messages name the category and the pattern.
  static Matcher compile(std::string_view ruleset_json,
                         const std::string& origin = "ruleset");
  static Matcher from_file(const std::filesystem::path& path);
  static const Matcher& builtin();

  const std::vector<MappingRule>& rules() const { return rules_; }
  CategorySet covered() const;

  // Every maximal match in lowercase text, ordered by begin then category.
  // Matches of one category contained in another match of the same category
  // are dropped; overlapping matches of different categories are kept.
  std::vector<CategoryMatch> find_all(std::string_view lowered_text) const;

  // Categories named by an already lemmatized entity.
  CategorySet map_entity(std::string_view normalized_text) const;

 private:
  std::vector<MappingRule> rules_;
  // One alternation per rule over its synonyms and anatomy terms; a rule
  // is only evaluated when its prefilter hits.
  std::vector<Pattern> prefilters_;
};

// Sets NoFindings: Positive iff all twelve diseases are Negative or Absent.
void derive_no_findings(StatusVector& statuses);

// Combines (category, status) evidence by precedence and derives NoFindings.
StatusVector reduce_statuses(
    std::span<const std::pair<DiseaseCategory, AssertionStatus>> evidence);

// Reduces the mentions of one exam and one system to a status per category.
// Mentions outside `scope` are ignored. RULELAB mentions carry their
// category name directly; others are mapped from normalized text. Throws
// Error(kPipelineOrderError) if an in-scope mention has no standardized
// assertion.
StatusVector reduce_report(std::span<const EntityMention> mentions,
                           const Matcher& matcher,
                           SectionScope scope = SectionScope::kImpression);

}  // namespace cxrlabel

#endif  // CXRLABEL_CHEXMAP_HPP_

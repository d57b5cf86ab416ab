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

#ifndef CXRLABEL_ADAPTERS_HPP_
#define CXRLABEL_ADAPTERS_HPP_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cxrlabel/types.hpp"

namespace cxrlabel {

using SystemId = std::string;

// Built-in system identifiers.
inline const SystemId kAws = "AWS";
inline const SystemId kAzure = "AZ";
inline const SystemId kGoogle = "GC";
inline const SystemId kSparkNlp = "SP";
inline const SystemId kRuleLab = "RULELAB";

enum class AssertionMode { kCategorical, kConfidenceThreshold };

struct SystemSpec {
  SystemId id;
  std::set<std::string> selected_categories;  // exact, case-sensitive
  AssertionMode mode = AssertionMode::kCategorical;
};

// Either a categorical label or a negation confidence score in [0,1].
using RawAssertion = std::variant<std::string, double>;

struct EntityMention {
  std::string exam_id;
  SystemId system;
  std::optional<SectionKind> section;  // nullopt for "UNKNOWN"
  std::string surface_text;
  std::string normalized_text;
  std::optional<CharRange> span;
  std::string raw_category;
  RawAssertion raw_assertion;
  std::optional<AssertionStatus> assertion;
};

class SystemRegistry {
 public:
  // AWS, AZ, GC and SP with their disease-related categories, plus RULELAB
  // whose categories are the thirteen label names.
  static SystemRegistry with_builtins();

  // Throws Error(kRegistryError) on a duplicate id or an empty category set.
  void register_system(SystemSpec spec);
  bool contains(const SystemId& id) const;
  // Throws Error(kRegistryError) for an unknown id.
  const SystemSpec& get(const SystemId& id) const;
  std::vector<SystemId> ids() const;

 private:
  std::map<SystemId, SystemSpec> systems_;
};

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<EntityMention> mentions;
  std::size_t total = 0;
  std::size_t dropped = 0;  // category outside the system's selection
  std::vector<RecordError> errors;

  std::size_t retained() const { return mentions.size(); }
};

// Reads interchange JSON Lines. Every non-blank line is one record and ends
// up in exactly one of mentions, dropped, or errors. Throws
// Error(kRegistryError) for an unregistered system and Error(kIoError) for
// an unreadable file.
IngestResult ingest(const SystemRegistry& registry, const SystemId& system,
                    const std::filesystem::path& records_path);
IngestResult ingest(const SystemRegistry& registry, const SystemId& system,
                    std::istream& records);

// Serializes a mention as one interchange line (no trailing newline). The
// normalized text and standardized status are included when set.
std::string to_interchange_line(const EntityMention& mention);

}  // namespace cxrlabel

#endif  // CXRLABEL_ADAPTERS_HPP_

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

#include "cxrlabel/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "cxrlabel/error.hpp"
#include "cxrlabel/text_util.hpp"

namespace cxrlabel {

AssertionMap AssertionMap::builtin() {
  using S = AssertionStatus;
  AssertionMap m;
  m.add_thresholds(kAws, ConfidenceThresholds{0.25, 0.75});
  m.add_categorical(kAzure, {{"positive", S::kPositive},
                             {"negative", S::kNegative},
                             {"positivepossible", S::kUncertain},
                             {"negativepossible", S::kUncertain},
                             {"neutralpossible", S::kUncertain}});
  m.add_categorical(kGoogle, {{"likely", S::kPositive},
                              {"unlikely", S::kNegative},
                              {"somewhat_likely", S::kUncertain},
                              {"somewhat_unlikely", S::kUncertain},
                              {"uncertain", S::kUncertain},
                              {"conditional", S::kUncertain}});
  // 'none' and 'past' are Positive as published for this system.
  m.add_categorical(kSparkNlp, {{"present", S::kPositive},
                                {"none", S::kPositive},
                                {"past", S::kPositive},
                                {"absent", S::kNegative},
                                {"family", S::kNegative},
                                {"someone else", S::kNegative},
                                {"planned", S::kNegative},
                                {"hypothetical", S::kUncertain},
                                {"possible", S::kUncertain}});
  m.add_categorical(kRuleLab, {{"Positive", S::kPositive},
                               {"Negative", S::kNegative},
                               {"Uncertain", S::kUncertain}});
  return m;
}

void AssertionMap::add_categorical(const SystemId& system,
                                   std::map<std::string, AssertionStatus> table) {
  if (entries_.count(system)) {
    throw Error(ErrorCode::kConfigError,
                "assertion mapping for " + system + " already defined");
  }
  for (const auto& [raw, status] : table) {
    if (status == AssertionStatus::kAbsent) {
      throw Error(ErrorCode::kConfigError, "assertion '" + raw + "' of " +
                                               system + " maps to Absent");
    }
  }
  entries_[system].table = std::move(table);
}

void AssertionMap::add_thresholds(const SystemId& system,
                                  ConfidenceThresholds t) {
  if (entries_.count(system)) {
    throw Error(ErrorCode::kConfigError,
                "assertion mapping for " + system + " already defined");
  }
  if (!(0.0 < t.positive_below && t.positive_below < t.negative_above &&
        t.negative_above < 1.0)) {
    throw Error(ErrorCode::kConfigError,
                "thresholds for " + system + " must satisfy 0 < pos < neg < 1");
  }
  entries_[system].thresholds = t;
}

bool AssertionMap::contains(const SystemId& system) const {
  return entries_.count(system) != 0;
}

AssertionStatus AssertionMap::standardize(const SystemId& system,
                                          const RawAssertion& raw) const {
  auto it = entries_.find(system);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kRegistryError,
                "no assertion mapping for system '" + system + "'");
  }
  const Entry& e = it->second;
  if (e.thresholds) {
    const double* cs = std::get_if<double>(&raw);
    if (!cs) {
      throw Error(ErrorCode::kRangeError,
                  system + " expects a negation confidence score");
    }
    if (!(*cs >= 0.0 && *cs <= 1.0)) {
      throw Error(ErrorCode::kRangeError,
                  "confidence score " + format_exact(*cs) + " outside [0,1]");
    }
    if (*cs < e.thresholds->positive_below) return AssertionStatus::kPositive;
    if (*cs > e.thresholds->negative_above) return AssertionStatus::kNegative;
    return AssertionStatus::kUncertain;
  }
  const std::string* label = std::get_if<std::string>(&raw);
  if (!label) {
    throw Error(ErrorCode::kRangeError,
                system + " expects a categorical assertion");
  }
  auto hit = e.table.find(*label);
  if (hit == e.table.end()) throw UnmappedAssertion(system, *label);
  return hit->second;
}

std::vector<std::string> AssertionMap::vocabulary(const SystemId& system) const {
  std::vector<std::string> out;
  auto it = entries_.find(system);
  if (it == entries_.end()) return out;
  for (const auto& [raw, status] : it->second.table) out.push_back(raw);
  return out;
}

std::vector<NormalizeError> normalize_mentions(std::vector<EntityMention>& mentions,
                                               const AssertionMap& map,
                                               const Lemmatizer& lemmatizer) {
  std::vector<NormalizeError> errors;
  std::vector<EntityMention> kept;
  kept.reserve(mentions.size());
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    auto& m = mentions[i];
    try {
      m.assertion = map.standardize(m.system, m.raw_assertion);
    } catch (const Error& e) {
      errors.push_back({i, e.what()});
      continue;
    }
    m.normalized_text = lemmatizer.lemmatize(m.surface_text);
    kept.push_back(std::move(m));
  }
  mentions = std::move(kept);
  return errors;
}

const DescriptiveRow* EntityDescriptives::find(const SystemId& system,
                                               std::string_view section) const {
  for (const auto& r : rows) {
    if (r.system == system && r.section == section) return &r;
  }
  return nullptr;
}

namespace {

std::string unique_key(const EntityMention& m) {
  return m.normalized_text.empty() ? to_lower_ascii(m.surface_text)
                                   : m.normalized_text;
}

DescriptiveRow summarize(const SystemId& system, std::string section,
                         const std::vector<std::size_t>& per_report,
                         const std::set<std::string>& unique) {
  DescriptiveRow row;
  row.system = system;
  row.section = std::move(section);
  for (auto c : per_report) row.total += c;
  const double n = static_cast<double>(per_report.size());
  if (n > 0) {
    row.mean_per_report = static_cast<double>(row.total) / n;
    double ss = 0.0;
    for (auto c : per_report) {
      const double d = static_cast<double>(c) - row.mean_per_report;
      ss += d * d;
    }
    row.sd = std::sqrt(ss / n);
  }
  row.unique = unique.size();
  return row;
}

}  // namespace

EntityDescriptives entity_descriptives(std::span<const EntityMention> mentions,
                                       std::span<const std::string> exam_ids,
                                       std::span<const SystemId> systems) {
  std::unordered_map<std::string_view, std::size_t> exam_index;
  for (std::size_t i = 0; i < exam_ids.size(); ++i) exam_index[exam_ids[i]] = i;

  std::set<std::string> orphans;
  for (const auto& m : mentions) {
    if (!exam_index.count(m.exam_id)) orphans.insert(m.exam_id);
  }
  if (!orphans.empty()) {
    std::string list;
    for (const auto& id : orphans) list += (list.empty() ? "" : ", ") + id;
    throw Error(ErrorCode::kOrphanExam, "mentions reference unknown exams: " + list);
  }

  EntityDescriptives out;
  out.report_count = exam_ids.size();
  const std::size_t n = exam_ids.size();

  for (const auto& system : systems) {
    std::array<std::vector<std::size_t>, kSectionCount> by_section;
    std::array<std::set<std::string>, kSectionCount> unique_by_section;
    std::array<bool, kSectionCount> seen{};
    for (auto& v : by_section) v.assign(n, 0);
    std::vector<std::size_t> all(n, 0);
    std::vector<std::size_t> fi(n, 0);
    std::set<std::string> unique_all;
    std::set<std::string> unique_fi;

    for (const auto& m : mentions) {
      if (m.system != system) continue;
      const std::size_t e = exam_index.at(m.exam_id);
      auto key = unique_key(m);
      ++all[e];
      unique_all.insert(key);
      if (!m.section) continue;
      const auto s = static_cast<std::size_t>(*m.section);
      seen[s] = true;
      ++by_section[s][e];
      unique_by_section[s].insert(key);
      if (*m.section == SectionKind::kFindings ||
          *m.section == SectionKind::kImpression) {
        ++fi[e];
        unique_fi.insert(std::move(key));
      }
    }

    for (std::size_t s = 0; s < kSectionCount; ++s) {
      if (!seen[s]) continue;
      out.rows.push_back(summarize(system,
                                   std::string(to_string(static_cast<SectionKind>(s))),
                                   by_section[s], unique_by_section[s]));
    }
    out.rows.push_back(summarize(system, std::string(kFindingsImpression), fi, unique_fi));
    out.rows.push_back(summarize(system, std::string(kAllSections), all, unique_all));
  }
  return out;
}

std::vector<double> per_report_counts(std::span<const EntityMention> mentions,
                                      std::span<const std::string> exam_ids,
                                      const SystemId& system) {
  std::unordered_map<std::string_view, std::size_t> exam_index;
  for (std::size_t i = 0; i < exam_ids.size(); ++i) exam_index[exam_ids[i]] = i;
  std::vector<double> counts(exam_ids.size(), 0.0);
  for (const auto& m : mentions) {
    if (m.system != system) continue;
    auto it = exam_index.find(m.exam_id);
    if (it == exam_index.end()) {
      throw Error(ErrorCode::kOrphanExam,
                  "mention references unknown exam " + m.exam_id);
    }
    counts[it->second] += 1.0;
  }
  return counts;
}

}  // namespace cxrlabel

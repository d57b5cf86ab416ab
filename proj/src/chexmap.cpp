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

#include "cxrlabel/chexmap.hpp"

#include <algorithm>

#include "cxrlabel/builtin_data.hpp"
#include "cxrlabel/error.hpp"
#include "cxrlabel/lemmatizer.hpp"
#include "cxrlabel/text_util.hpp"
#include "json.hpp"

namespace cxrlabel {

using nlohmann::json;

std::vector<DiseaseCategory> to_list(const CategorySet& set) {
  std::vector<DiseaseCategory> out;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    if (set.test(c)) out.push_back(category_at(c));
  }
  return out;
}

std::string_view to_string(SectionScope scope) {
  return scope == SectionScope::kImpression ? "impression" : "both";
}

std::optional<SectionScope> parse_section_scope(std::string_view name) {
  if (name == "impression") return SectionScope::kImpression;
  if (name == "both") return SectionScope::kFindingsImpression;
  return std::nullopt;
}

bool in_scope(SectionScope scope, std::optional<SectionKind> section) {
  if (!section) return false;
  if (*section == SectionKind::kImpression) return true;
  return scope == SectionScope::kFindingsImpression &&
         *section == SectionKind::kFindings;
}

namespace {

std::vector<Pattern> compile_list(const json& node, const std::string& where) {
  if (!node.is_array()) throw Error(ErrorCode::kConfigError, where + ": expected a list");
  std::vector<Pattern> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!node[i].is_string()) throw Error(ErrorCode::kConfigError, at + ": expected a string");
    out.push_back(Pattern::compile(node[i].get<std::string>(), at));
  }
  return out;
}

std::string alternation(const MappingRule& rule) {
  std::string s;
  auto add = [&s](const Pattern& p) {
    if (!s.empty()) s += '|';
    s += "(?:" + p.source() + ")";
  };
  for (const auto& p : rule.synonyms) add(p);
  for (const auto& c : rule.compounds) {
    for (const auto& p : c.anatomy) add(p);
  }
  return s;
}

bool is_clause_end(char c) {
  return c == '.' || c == ';' || c == '!' || c == '?' || c == '\n';
}

std::size_t clause_end(std::string_view text, std::size_t from) {
  for (std::size_t i = from; i < text.size(); ++i) {
    if (is_clause_end(text[i])) return i;
  }
  return text.size();
}

void compound_matches(const CompoundRule& rule, std::string_view text,
                      std::vector<CharRange>& out) {
  for (const auto& anatomy : rule.anatomy) {
    for (const auto& a : anatomy.find_all(text)) {
      const std::size_t stop = clause_end(text, a.end);
      const std::string_view clause = text.substr(0, stop);
      std::optional<CharRange> attr;
      for (const auto& p : rule.attributes) {
        auto m = p.find(clause, a.end);
        if (m && (!attr || m->begin < attr->begin)) attr = m;
      }
      if (!attr) continue;
      bool excluded = false;
      for (const auto& p : rule.exclusions) {
        if (p.find(clause, a.end)) {
          excluded = true;
          break;
        }
      }
      if (!excluded) out.push_back(CharRange{a.begin, attr->end});
    }
  }
}

}  // namespace

Matcher Matcher::compile(std::string_view ruleset_json, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(ruleset_json);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, origin + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kConfigError, origin + ": top level must be an object");
  }
  Matcher m;
  for (const auto& [key, body] : doc.items()) {
    if (!key.empty() && key[0] == '_') continue;
    const auto category = parse_category(key);
    if (!category) {
      throw Error(ErrorCode::kConfigError, origin + ": unknown category '" + key + "'");
    }
    if (*category == DiseaseCategory::kNoFindings) {
      throw Error(ErrorCode::kConfigError,
                  origin + ": NoFindings is derived and cannot have patterns");
    }
    if (!body.is_object()) {
      throw Error(ErrorCode::kConfigError, origin + ": " + key + " must be an object");
    }
    MappingRule rule;
    rule.category = *category;
    const std::string where = origin + ": category " + key;
    for (const auto& [field, value] : body.items()) {
      if (!field.empty() && field[0] == '_') continue;
      if (field == "synonyms") {
        rule.synonyms = compile_list(value, where + " synonyms");
      } else if (field == "compounds") {
        if (!value.is_array()) {
          throw Error(ErrorCode::kConfigError, where + " compounds: expected a list");
        }
        for (std::size_t i = 0; i < value.size(); ++i) {
          const std::string at = where + " compounds[" + std::to_string(i) + "]";
          const json& c = value[i];
          if (!c.is_object() || !c.contains("anatomy") || !c.contains("attributes")) {
            throw Error(ErrorCode::kConfigError,
                        at + ": needs 'anatomy' and 'attributes' lists");
          }
          CompoundRule cr;
          cr.anatomy = compile_list(c["anatomy"], at + " anatomy");
          cr.attributes = compile_list(c["attributes"], at + " attributes");
          if (c.contains("exclusions")) {
            cr.exclusions = compile_list(c["exclusions"], at + " exclusions");
          }
          if (cr.anatomy.empty() || cr.attributes.empty()) {
            throw Error(ErrorCode::kConfigError,
                        at + ": 'anatomy' and 'attributes' must be non-empty");
          }
          rule.compounds.push_back(std::move(cr));
        }
      } else {
        throw Error(ErrorCode::kConfigError, where + ": unknown field '" + field + "'");
      }
    }
    if (rule.synonyms.empty() && rule.compounds.empty()) {
      throw Error(ErrorCode::kConfigError, where + ": no patterns");
    }
    m.rules_.push_back(std::move(rule));
  }
  if (m.rules_.empty()) {
    throw Error(ErrorCode::kConfigError, origin + ": ruleset covers no categories");
  }
  std::stable_sort(m.rules_.begin(), m.rules_.end(),
                   [](const MappingRule& a, const MappingRule& b) {
                     return a.category < b.category;
                   });
  for (std::size_t i = 1; i < m.rules_.size(); ++i) {
    if (m.rules_[i].category == m.rules_[i - 1].category) {
      throw Error(ErrorCode::kConfigError,
                  origin + ": category " +
                      std::string(to_string(m.rules_[i].category)) + " defined twice");
    }
  }
  for (const auto& rule : m.rules_) {
    m.prefilters_.push_back(Pattern::compile(
        alternation(rule),
        origin + ": category " + std::string(to_string(rule.category))));
  }
  return m;
}

Matcher Matcher::from_file(const std::filesystem::path& path) {
  return compile(read_file(path), path.string());
}

const Matcher& Matcher::builtin() {
  static const Matcher m = compile(builtin_ruleset(), "builtin ruleset");
  return m;
}

CategorySet Matcher::covered() const {
  CategorySet s;
  for (const auto& r : rules_) s.set(index_of(r.category));
  return s;
}

std::vector<CategoryMatch> Matcher::find_all(std::string_view text) const {
  std::vector<CategoryMatch> out;
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    if (!prefilters_[r].search(text)) continue;
    const MappingRule& rule = rules_[r];
    std::vector<CharRange> spans;
    for (const auto& p : rule.synonyms) {
      auto found = p.find_all(text);
      spans.insert(spans.end(), found.begin(), found.end());
    }
    for (const auto& c : rule.compounds) compound_matches(c, text, spans);
    std::sort(spans.begin(), spans.end(), [](const CharRange& a, const CharRange& b) {
      return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
    });
    std::size_t reach = 0;
    bool any = false;
    for (const auto& s : spans) {
      // Sorted by begin, longest first: contained iff it ends within reach.
      if (any && s.end <= reach) continue;
      out.push_back(CategoryMatch{rule.category, s});
      reach = std::max(reach, s.end);
      any = true;
    }
  }
  std::sort(out.begin(), out.end(), [](const CategoryMatch& a, const CategoryMatch& b) {
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    if (a.category != b.category) return a.category < b.category;
    return a.span.end < b.span.end;
  });
  return out;
}

CategorySet Matcher::map_entity(std::string_view normalized_text) const {
  CategorySet s;
  const std::string lowered = to_lower_ascii(normalized_text);
  for (const auto& m : find_all(lowered)) s.set(index_of(m.category));
  return s;
}

void derive_no_findings(StatusVector& statuses) {
  bool clear = true;
  for (std::size_t c = 0; c < kDiseaseCount; ++c) {
    if (statuses[c] == AssertionStatus::kPositive ||
        statuses[c] == AssertionStatus::kUncertain) {
      clear = false;
      break;
    }
  }
  statuses[index_of(DiseaseCategory::kNoFindings)] =
      clear ? AssertionStatus::kPositive : AssertionStatus::kAbsent;
}

StatusVector reduce_statuses(
    std::span<const std::pair<DiseaseCategory, AssertionStatus>> evidence) {
  StatusVector v = all_absent();
  for (const auto& [category, status] : evidence) {
    if (category == DiseaseCategory::kNoFindings) continue;
    auto& cell = v[index_of(category)];
    cell = combine(cell, status);
  }
  derive_no_findings(v);
  return v;
}

StatusVector reduce_report(std::span<const EntityMention> mentions,
                           const Matcher& matcher, SectionScope scope) {
  std::vector<std::pair<DiseaseCategory, AssertionStatus>> evidence;
  for (const auto& m : mentions) {
    if (!in_scope(scope, m.section)) continue;
    if (!m.assertion) {
      throw Error(ErrorCode::kPipelineOrderError,
                  "mention '" + m.surface_text + "' of exam " + m.exam_id +
                      " has no standardized assertion");
    }
    if (m.system == kRuleLab) {
      if (auto c = parse_category(m.raw_category)) {
        evidence.emplace_back(*c, *m.assertion);
        continue;
      }
    }
    const std::string text = m.normalized_text.empty()
                                 ? Lemmatizer::builtin().lemmatize(m.surface_text)
                                 : m.normalized_text;
    for (auto c : to_list(matcher.map_entity(text))) {
      evidence.emplace_back(c, *m.assertion);
    }
  }
  return reduce_statuses(evidence);
}

}  // namespace cxrlabel

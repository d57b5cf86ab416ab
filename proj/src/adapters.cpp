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

#include "cxrlabel/adapters.hpp"

#include <fstream>

#include "cxrlabel/error.hpp"
#include "cxrlabel/text_util.hpp"
#include "json.hpp"

namespace cxrlabel {

using nlohmann::json;

SystemRegistry SystemRegistry::with_builtins() {
  SystemRegistry r;
  r.register_system({kAws, {"MEDICAL_CONDITION"}, AssertionMode::kConfidenceThreshold});
  r.register_system({kAzure, {"SYMPTOM_OR_SIGN", "DIAGNOSIS"}, AssertionMode::kCategorical});
  r.register_system({kGoogle, {"PROBLEM"}, AssertionMode::kCategorical});
  r.register_system({kSparkNlp,
                     {"Disease_Syndrome_Disorder", "Symptom", "ImagingFindings"},
                     AssertionMode::kCategorical});
  SystemSpec rulelab{kRuleLab, {}, AssertionMode::kCategorical};
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    rulelab.selected_categories.emplace(to_string(category_at(c)));
  }
  r.register_system(std::move(rulelab));
  return r;
}

void SystemRegistry::register_system(SystemSpec spec) {
  if (spec.id.empty()) {
    throw Error(ErrorCode::kRegistryError, "system id must not be empty");
  }
  if (spec.selected_categories.empty()) {
    throw Error(ErrorCode::kRegistryError,
                "system " + spec.id + " selects no categories");
  }
  if (systems_.count(spec.id)) {
    throw Error(ErrorCode::kRegistryError,
                "system " + spec.id + " is already registered");
  }
  auto id = spec.id;
  systems_.emplace(std::move(id), std::move(spec));
}

bool SystemRegistry::contains(const SystemId& id) const {
  return systems_.count(id) != 0;
}

const SystemSpec& SystemRegistry::get(const SystemId& id) const {
  auto it = systems_.find(id);
  if (it == systems_.end()) {
    throw Error(ErrorCode::kRegistryError, "unknown system '" + id + "'");
  }
  return it->second;
}

std::vector<SystemId> SystemRegistry::ids() const {
  std::vector<SystemId> out;
  for (const auto& [id, spec] : systems_) out.push_back(id);
  return out;
}

namespace {

const std::string& require_string(const json& rec, const char* key) {
  auto it = rec.find(key);
  if (it == rec.end()) throw std::invalid_argument(std::string("missing '") + key + "'");
  if (!it->is_string()) throw std::invalid_argument(std::string("'") + key + "' must be a string");
  return it->get_ref<const std::string&>();
}

std::optional<std::size_t> optional_offset(const json& rec, const char* key) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer() || it->get<long long>() < 0) {
    throw std::invalid_argument(std::string("'") + key +
                                "' must be a nonnegative integer");
  }
  return static_cast<std::size_t>(it->get<long long>());
}

// Parses one record; std::invalid_argument carries the per-record message.
EntityMention parse_record(const std::string& line, const SystemSpec& spec) {
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  if (!rec.is_object()) throw std::invalid_argument("record is not an object");

  EntityMention m;
  m.exam_id = require_string(rec, "exam_id");
  if (m.exam_id.empty()) throw std::invalid_argument("empty exam_id");
  m.system = require_string(rec, "system");
  if (m.system != spec.id) {
    throw std::invalid_argument("record system '" + m.system +
                                "' does not match ingest system '" + spec.id + "'");
  }
  const auto& section = require_string(rec, "section");
  if (section != "UNKNOWN") {
    m.section = parse_section(section);
    if (!m.section) throw std::invalid_argument("unknown section '" + section + "'");
  }
  m.surface_text = require_string(rec, "text");
  m.raw_category = require_string(rec, "category");

  const bool has_label = rec.contains("assertion");
  const bool has_score = rec.contains("negation_confidence");
  if (has_label == has_score) {
    throw std::invalid_argument(
        "exactly one of 'assertion' or 'negation_confidence' is required");
  }
  if (has_score) {
    const auto& v = rec.at("negation_confidence");
    if (!v.is_number()) throw std::invalid_argument("'negation_confidence' must be a number");
    const double cs = v.get<double>();
    if (!(cs >= 0.0 && cs <= 1.0)) {
      throw std::invalid_argument("negation_confidence " + format_exact(cs) +
                                  " outside [0,1]");
    }
    if (spec.mode != AssertionMode::kConfidenceThreshold) {
      throw std::invalid_argument("system " + spec.id + " expects categorical assertions");
    }
    m.raw_assertion = cs;
  } else {
    if (spec.mode != AssertionMode::kCategorical) {
      throw std::invalid_argument("system " + spec.id + " expects negation_confidence");
    }
    m.raw_assertion = require_string(rec, "assertion");
  }

  auto begin = optional_offset(rec, "begin");
  auto end = optional_offset(rec, "end");
  if (begin.has_value() != end.has_value()) {
    throw std::invalid_argument("'begin' and 'end' must be given together");
  }
  if (begin) {
    if (*end < *begin) throw std::invalid_argument("'end' precedes 'begin'");
    m.span = CharRange{*begin, *end};
  }

  if (auto it = rec.find("normalized"); it != rec.end() && it->is_string()) {
    m.normalized_text = it->get<std::string>();
  }
  if (auto it = rec.find("status"); it != rec.end()) {
    auto status = it->is_string() ? parse_status(it->get<std::string>()) : std::nullopt;
    if (!status || *status == AssertionStatus::kAbsent) {
      throw std::invalid_argument("invalid 'status'");
    }
    m.assertion = status;
  }
  return m;
}

}  // namespace

IngestResult ingest(const SystemRegistry& registry, const SystemId& system,
                    std::istream& records) {
  const SystemSpec& spec = registry.get(system);
  IngestResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(records, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++result.total;
    try {
      EntityMention m = parse_record(line, spec);
      if (!spec.selected_categories.count(m.raw_category)) {
        ++result.dropped;
        continue;
      }
      result.mentions.push_back(std::move(m));
    } catch (const std::invalid_argument& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

IngestResult ingest(const SystemRegistry& registry, const SystemId& system,
                    const std::filesystem::path& records_path) {
  registry.get(system);
  std::ifstream in(records_path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError,
                "cannot open interchange file " + records_path.string());
  }
  return ingest(registry, system, in);
}

std::string to_interchange_line(const EntityMention& m) {
  nlohmann::ordered_json rec;
  rec["exam_id"] = m.exam_id;
  rec["system"] = m.system;
  rec["section"] = m.section ? std::string(to_string(*m.section)) : "UNKNOWN";
  rec["text"] = m.surface_text;
  rec["category"] = m.raw_category;
  if (const auto* label = std::get_if<std::string>(&m.raw_assertion)) {
    rec["assertion"] = *label;
  } else {
    rec["negation_confidence"] = std::get<double>(m.raw_assertion);
  }
  if (m.span) {
    rec["begin"] = m.span->begin;
    rec["end"] = m.span->end;
  }
  if (!m.normalized_text.empty()) rec["normalized"] = m.normalized_text;
  if (m.assertion) rec["status"] = std::string(to_string(*m.assertion));
  return rec.dump();
}

}  // namespace cxrlabel

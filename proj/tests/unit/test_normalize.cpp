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

#include "doctest.h"

#include <cmath>

#include "cxrlabel/error.hpp"
#include "cxrlabel/lemmatizer.hpp"
#include "cxrlabel/normalize.hpp"

using namespace cxrlabel;

namespace {
constexpr auto P = AssertionStatus::kPositive;
constexpr auto N = AssertionStatus::kNegative;
constexpr auto U = AssertionStatus::kUncertain;
}  // namespace

TEST_SUITE("normalize") {
  TEST_CASE("categorical examples") {
    const auto m = AssertionMap::builtin();
    CHECK(m.standardize(kGoogle, std::string("conditional")) == U);
    CHECK(m.standardize(kSparkNlp, std::string("family")) == N);
    CHECK(m.standardize(kAzure, std::string("neutralpossible")) == U);
    try {
      m.standardize(kAzure, std::string("Positive"));
      FAIL("expected unmapped");
    } catch (const UnmappedAssertion& e) {
      CHECK(e.raw() == "Positive");
    }
    CHECK_THROWS_AS(m.standardize("NOBODY", std::string("x")), Error);
    CHECK_THROWS_AS(m.standardize(kAzure, 0.5), Error);
  }

  TEST_CASE("confidence thresholds with a closed middle interval") {
    const auto m = AssertionMap::builtin();
    CHECK(m.standardize(kAws, 0.10) == P);
    CHECK(m.standardize(kAws, 0.80) == N);
    CHECK(m.standardize(kAws, 0.50) == U);
    CHECK(m.standardize(kAws, 0.25) == U);
    CHECK(m.standardize(kAws, 0.75) == U);
    CHECK(m.standardize(kAws, std::nextafter(0.25, 0.0)) == P);
    CHECK(m.standardize(kAws, std::nextafter(0.75, 1.0)) == N);
    CHECK_THROWS_AS(m.standardize(kAws, 1.3), Error);
    CHECK_THROWS_AS(m.standardize(kAws, -0.01), Error);
    CHECK_THROWS_AS(m.standardize(kAws, std::string("yes")), Error);
  }

  TEST_CASE("invalid tables") {
    AssertionMap m;
    CHECK_THROWS_AS(m.add_categorical("X", {{"a", AssertionStatus::kAbsent}}), Error);
    CHECK_THROWS_AS(m.add_thresholds("Y", {0.8, 0.2}), Error);
    m.add_categorical("X", {{"a", P}});
    CHECK_THROWS_AS(m.add_categorical("X", {{"b", P}}), Error);
  }

  TEST_CASE("normalize_mentions drops and reports unmapped values") {
    std::vector<EntityMention> ms(3);
    ms[0].system = kGoogle;
    ms[0].surface_text = "Pleural Effusions";
    ms[0].raw_assertion = std::string("likely");
    ms[1].system = kGoogle;
    ms[1].surface_text = "x";
    ms[1].raw_assertion = std::string("LIKELY");
    ms[2].system = kAws;
    ms[2].surface_text = "Opacities";
    ms[2].raw_assertion = 0.9;
    const auto errs = normalize_mentions(ms, AssertionMap::builtin(), Lemmatizer::builtin());
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].index == 1);
    CHECK(errs[0].message.find("LIKELY") != std::string::npos);
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].normalized_text == "pleural effusion");
    CHECK(ms[0].assertion == P);
    CHECK(ms[1].normalized_text == "opacity");
    CHECK(ms[1].assertion == N);
  }

  TEST_CASE("descriptives") {
    const std::vector<std::string> exams{"r1", "r2"};
    std::vector<EntityMention> ms;
    auto add = [&](const std::string& exam, const std::string& text, SectionKind s) {
      EntityMention m;
      m.exam_id = exam;
      m.system = "X";
      m.section = s;
      m.surface_text = text;
      m.normalized_text = text;
      ms.push_back(m);
    };
    add("r1", "effusion", SectionKind::kImpression);
    add("r1", "effusion", SectionKind::kFindings);
    for (int i = 0; i < 4; ++i) add("r2", "mass" + std::to_string(i), SectionKind::kImpression);
    const std::vector<SystemId> systems{"X", "Y"};
    const auto d = entity_descriptives(ms, exams, systems);
    const auto* all = d.find("X", kAllSections);
    REQUIRE(all != nullptr);
    CHECK(all->total == 6);
    CHECK(all->mean_per_report == doctest::Approx(3.0));
    CHECK(all->sd == doctest::Approx(1.0));
    CHECK(all->unique == 5);
    const auto* y = d.find("Y", kAllSections);
    REQUIRE(y != nullptr);
    CHECK(y->total == 0);
    CHECK(y->mean_per_report == 0.0);
    CHECK(y->sd == 0.0);
    CHECK(y->unique == 0);
    CHECK(per_report_counts(ms, exams, "X") == std::vector<double>{2, 4});

    ms[0].exam_id = "ghost";
    try {
      entity_descriptives(ms, exams, systems);
      FAIL("expected orphan error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kOrphanExam);
      CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
  }
}

TEST_SUITE("lemmatizer") {
  TEST_CASE("fifty radiology words") {
    const std::pair<const char*, const char*> cases[] = {
        {"opacities", "opacity"},       {"effusions", "effusion"},
        {"nodules", "nodule"},          {"masses", "mass"},
        {"diagnosed", "diagnose"},      {"diagnoses", "diagnose"},
        {"diagnosing", "diagnose"},     {"enlarged", "enlarge"},
        {"widened", "widen"},           {"widening", "widen"},
        {"consolidations", "consolidation"}, {"infiltrates", "infiltrate"},
        {"fractures", "fracture"},      {"fractured", "fracture"},
        {"collapsed", "collapse"},      {"thickening", "thicken"},
        {"thickened", "thicken"},       {"scarring", "scar"},
        {"blebs", "bleb"},              {"bullae", "bulla"},
        {"lesions", "lesion"},          {"densities", "density"},
        {"findings", "finding"},        {"changes", "change"},
        {"changed", "change"},          {"increased", "increase"},
        {"decreased", "decrease"},      {"improving", "improve"},
        {"resolved", "resolve"},        {"worsening", "worsen"},
        {"lungs", "lung"},              {"ribs", "rib"},
        {"tubes", "tube"},              {"catheters", "catheter"},
        {"atelectasis", "atelectasis"}, {"pneumothoraces", "pneumothorax"},
        {"apices", "apex"},             {"bronchi", "bronchus"},
        {"vessels", "vessel"},          {"calcified", "calcify"},
        {"calcifications", "calcification"}, {"angles", "angle"},
        {"measuring", "measure"},       {"noted", "note"},
        {"suggested", "suggest"},       {"airspaces", "airspace"},
        {"plugging", "plug"},           {"mottled", "mottle"},
        {"stable", "stable"},           {"shifted", "shift"},
    };
    static_assert(std::size(cases) == 50);
    const auto& lem = Lemmatizer::builtin();
    for (const auto& [word, lemma] : cases) {
      CAPTURE(word);
      CHECK(lem.lemma(word) == lemma);
    }
  }

  TEST_CASE("phrases") {
    const auto& lem = Lemmatizer::builtin();
    CHECK(lem.lemmatize("  Bilateral  Pleural Effusions. ") == "bilateral pleural effusion");
    CHECK(lem.lemmatize("atelectasis/pneumonia") == "atelectasis/pneumonia");
    CHECK(lem.lemmatize("well-defined, nodules!") == "well-define nodule");
    CHECK(lem.lemmatize("") == "");
  }

  TEST_CASE("idempotent") {
    const auto& lem = Lemmatizer::builtin();
    const char* phrases[] = {"opacities",  "enlarged cardiomediastinal silhouettes",
                             "diagnoses",  "widened mediastinum",
                             "bullae",     "apices and bronchi",
                             "the ribs were fractured", "plugging",
                             "lines tubes wires", "noted scarring"};
    for (const char* p : phrases) {
      CAPTURE(p);
      const auto once = lem.lemmatize(p);
      CHECK(lem.lemmatize(once) == once);
    }
  }

  TEST_CASE("bad tables name the line") {
    try {
      Lemmatizer::parse("# ok\nfoci\tfocus\nno tab here\n");
      FAIL("expected config error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kConfigError);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
}

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

#include <sstream>

#include "cxrlabel/adapters.hpp"
#include "cxrlabel/error.hpp"

using namespace cxrlabel;

namespace {

std::string record(const std::string& system, const std::string& category,
                   const std::string& assertion_field) {
  return R"({"exam_id":"e1","system":")" + system + R"(","section":"Impression","text":"effusion","category":")" +
         category + R"(",)" + assertion_field + "}\n";
}

}  // namespace

TEST_SUITE("adapters") {
  TEST_CASE("builtin registry and duplicate registration") {
    auto r = SystemRegistry::with_builtins();
    CHECK(r.get(kAws).selected_categories == std::set<std::string>{"MEDICAL_CONDITION"});
    CHECK(r.get(kSparkNlp).selected_categories.size() == 3);
    CHECK(r.get(kAws).mode == AssertionMode::kConfidenceThreshold);
    CHECK_THROWS_AS(r.register_system({kAws, {"X"}, AssertionMode::kCategorical}), Error);
    CHECK_THROWS_AS(r.register_system({"NEW", {}, AssertionMode::kCategorical}), Error);
    CHECK_THROWS_AS(r.get("nobody"), Error);
    r.register_system({"NEW", {"THING"}, AssertionMode::kCategorical});
    CHECK(r.contains("NEW"));
  }

  TEST_CASE("retained, dropped and errored records add up") {
    const auto r = SystemRegistry::with_builtins();
    std::stringstream az;
    az << record("AZ", "DIAGNOSIS", R"("assertion":"positive")")
       << record("AZ", "MEDICATION", R"("assertion":"positive")")
       << "not json\n\n"
       << record("AZ", "DIAGNOSIS", R"("negation_confidence":0.2)")
       << record("GC", "PROBLEM", R"("assertion":"likely")");
    const auto res = ingest(r, "AZ", az);
    CHECK(res.total == 5);
    CHECK(res.retained() == 1);
    CHECK(res.dropped == 1);
    CHECK(res.errors.size() == 3);
    CHECK(res.retained() + res.dropped + res.errors.size() == res.total);
    CHECK(res.errors[0].line == 3);
    CHECK_FALSE(res.mentions[0].assertion.has_value());
  }

  TEST_CASE("confidence out of range is a record error") {
    const auto r = SystemRegistry::with_builtins();
    std::stringstream aws;
    aws << record("AWS", "MEDICAL_CONDITION", R"("negation_confidence":1.3)")
        << record("AWS", "MEDICAL_CONDITION", R"("negation_confidence":0.3,"begin":4,"end":9)");
    const auto res = ingest(r, "AWS", aws);
    REQUIRE(res.errors.size() == 1);
    CHECK(res.errors[0].message.find("outside [0,1]") != std::string::npos);
    REQUIRE(res.retained() == 1);
    CHECK(res.mentions[0].span == CharRange{4, 9});
  }

  TEST_CASE("unknown system") {
    const auto r = SystemRegistry::with_builtins();
    std::stringstream in;
    CHECK_THROWS_AS(ingest(r, "XYZ", in), Error);
  }

  TEST_CASE("interchange line round trip and repeat ingestion") {
    const auto r = SystemRegistry::with_builtins();
    EntityMention m;
    m.exam_id = "a,b";
    m.system = "GC";
    m.section = SectionKind::kFindings;
    m.surface_text = "small \"left\" effusion";
    m.raw_category = "PROBLEM";
    m.raw_assertion = std::string("unlikely");
    m.span = CharRange{2, 7};
    std::stringstream a(to_interchange_line(m) + "\n");
    std::stringstream b(to_interchange_line(m) + "\n");
    const auto ra = ingest(r, "GC", a);
    const auto rb = ingest(r, "GC", b);
    REQUIRE(ra.retained() == 1);
    CHECK(to_interchange_line(ra.mentions[0]) == to_interchange_line(m));
    CHECK(to_interchange_line(ra.mentions[0]) == to_interchange_line(rb.mentions[0]));
  }
}

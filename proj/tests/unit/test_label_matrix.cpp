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

#include <functional>

#include "cxrlabel/error.hpp"
#include "cxrlabel/label_matrix.hpp"
#include "support/tempdir.hpp"

using namespace cxrlabel;

namespace {

using C = DiseaseCategory;

LabelSlice make_slice(const std::string& system, std::vector<std::string> exams) {
  LabelSlice s;
  s.system = system;
  s.exam_ids = std::move(exams);
  for (std::size_t i = 0; i < s.exam_ids.size(); ++i) {
    StatusVector v = all_absent();
    v[i % kCategoryCount] = kAllStatuses[i % 3];
    s.rows.push_back(v);
  }
  return s;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kIoError;
}

}  // namespace

TEST_SUITE("label_matrix") {
  TEST_CASE("cells default to Absent and lanes are exam-contiguous") {
    LabelMatrix m({"a", "b"}, {"X", "Y"});
    CHECK(m.at(1, C::kEdema, 1) == AssertionStatus::kAbsent);
    m.set(1, C::kEdema, 1, AssertionStatus::kPositive);
    const auto lane = m.lane(1, C::kEdema);
    REQUIRE(lane.size() == 2);
    CHECK(lane[1] == 0);
    CHECK(lane[0] == 3);
    CHECK(m.exam_index("b") == 1u);
    CHECK_FALSE(m.system_index("Z").has_value());
    CHECK(code_of([&] { m.require_system("Z"); }) == ErrorCode::kRegistryError);
    CHECK(code_of([] { LabelMatrix({"a", "a"}, {"X"}); }) == ErrorCode::kDuplicateExam);
    CHECK(code_of([] { LabelMatrix({"a"}, {"X", "X"}); }) == ErrorCode::kRegistryError);
  }

  TEST_CASE("slice file round trip") {
    TempDir dir;
    auto s = make_slice("RULELAB", {"e1", "e,2", "e3"});
    s.meta["sections"] = "impression";
    write_slice(dir / "s.csv", s);
    const auto back = read_slice(dir / "s.csv");
    CHECK(back.system == "RULELAB");
    CHECK(back.exam_ids == s.exam_ids);
    CHECK(back.rows == s.rows);
    CHECK(back.meta == s.meta);
    CHECK(format_slice(back) == format_slice(s));
  }

  TEST_CASE("slice parse errors") {
    CHECK(code_of([] { parse_slice("exam_id,A\n", "X"); }) == ErrorCode::kConfigError);
    auto good = format_slice(make_slice("X", {"e1"}));
    CHECK(code_of([&] { parse_slice(good + good.substr(good.rfind("e1"))); }) ==
          ErrorCode::kDuplicateExam);
    auto bad = good;
    bad.replace(bad.rfind("Positive"), 8, "Maybe");
    CHECK(code_of([&] { parse_slice(bad); }) == ErrorCode::kConfigError);
    CHECK(code_of([] { parse_slice("exam_id\n"); }) == ErrorCode::kConfigError);
  }

  TEST_CASE("assemble aligns exam order and reports coverage gaps") {
    const std::vector<LabelSlice> ok{make_slice("X", {"a", "b", "c"}),
                                     make_slice("Y", {"c", "a", "b"})};
    const auto m = assemble(ok);
    CHECK(m.exam_ids() == std::vector<std::string>{"a", "b", "c"});
    CHECK(m.row(1, 0) == ok[1].rows[1]);
    CHECK(slice_of(m, 0).rows == ok[0].rows);

    const std::vector<LabelSlice> gap{make_slice("X", {"a", "b", "c"}),
                                      make_slice("Y", {"a", "b", "d"})};
    try {
      assemble(gap);
      FAIL("expected coverage mismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCoverageMismatch);
      const std::string what = e.what();
      CHECK(what.find("c") != std::string::npos);
      CHECK(what.find("d") != std::string::npos);
    }
    CHECK(code_of([] { assemble(std::vector<LabelSlice>{}); }) == ErrorCode::kArityError);
  }
}

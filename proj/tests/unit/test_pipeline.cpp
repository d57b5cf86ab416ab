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

#include "cxrlabel/error.hpp"
#include "cxrlabel/label_matrix.hpp"
#include "cxrlabel/pipeline.hpp"
#include "cxrlabel/text_util.hpp"
#include "json.hpp"
#include "support/tempdir.hpp"

using namespace cxrlabel;
namespace fs = std::filesystem;

namespace {

struct Bundle {
  TempDir dir;
  std::ostringstream log;

  RunConfig synth(std::size_t n, double hedging) {
    RunConfig c;
    c.seed = 5;
    c.n = n;
    c.hedging = hedging;
    c.out = dir / "synth";
    REQUIRE(cmd_synth(c, log) == kExitOk);
    return c;
  }
};

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("system path arguments") {
    const auto sp = parse_system_path("GC=out/gc.jsonl");
    CHECK(sp.first == "GC");
    CHECK(sp.second == fs::path("out/gc.jsonl"));
    CHECK_THROWS_AS(parse_system_path("nopath"), Error);
    CHECK_THROWS_AS(parse_system_path("=x"), Error);
  }

  TEST_CASE("archive round trip keeps sections") {
    TempDir dir;
    const auto r = parse_report("e1", {12, Sex::kFemale}, "FINDINGS: a\nIMPRESSION: b");
    write_file(dir / "c.jsonl", format_archive_line(r) + "\n");
    const auto back = read_archive(dir / "c.jsonl");
    REQUIRE(back.size() == 1);
    CHECK(back[0].raw_text == r.raw_text);
    CHECK(back[0].meta.age_months == 12u);
    REQUIRE(back[0].sections.size() == 2);
    CHECK(back[0].sections[1].range == r.sections[1].range);
    CHECK(back[0].body(SectionKind::kImpression) == "b");
  }

  TEST_CASE("synth, parse, label, evaluate") {
    Bundle b;
    b.synth(40, 0.0);
    RunConfig parse;
    parse.manifest = b.dir / "synth/manifest.csv";
    parse.out = b.dir / "parsed";
    CHECK(cmd_parse(parse, b.log) == kExitOk);
    CHECK(fs::exists(b.dir / "parsed/corpus.jsonl"));

    RunConfig label;
    label.corpus = b.dir / "parsed/corpus.jsonl";
    label.out = b.dir / "labels";
    CHECK(cmd_label(label, b.log) == kExitOk);
    const auto slice = read_slice(b.dir / "labels/slice_RULELAB.csv");
    CHECK(slice.exam_ids.size() == 40);
    CHECK(slice.meta.at("sections") == "impression");

    RunConfig eval;
    eval.label_dirs = {b.dir / "labels"};
    eval.references = {{"TRUTH", b.dir / "synth/ground_truth.csv"}};
    eval.out = b.dir / "eval";
    CHECK(cmd_evaluate(eval, b.log) == kExitOk);
    for (const char* f : {"consensus.csv", "kappa.csv", "accuracy_all.csv", "accuracy_present.csv",
                          "reference_TRUTH_accuracy_all.csv", "reference_TRUTH_kappa.csv",
                          "summary.json"}) {
      CAPTURE(f);
      CHECK(fs::exists(b.dir / "eval" / f));
    }
    const auto summary = nlohmann::json::parse(read_file(b.dir / "eval/summary.json"));
    const double acc =
        summary["references"]["TRUTH"]["accuracy"][0]["overall"]["mean"].get<double>();
    CHECK(acc >= 0.99);
  }

  TEST_CASE("label over a manifest with an interchange file") {
    Bundle b;
    b.synth(5, 0.0);
    write_file(b.dir / "gc.jsonl",
               R"({"exam_id":"SYN000001","system":"GC","section":"Impression","text":"Pleural effusions","category":"PROBLEM","assertion":"likely"})"
               "\n"
               R"({"exam_id":"SYN000002","system":"GC","section":"Impression","text":"x","category":"PROBLEM","assertion":"odd"})"
               "\n");
    RunConfig label;
    label.manifest = b.dir / "synth/manifest.csv";
    label.interchange = {{"GC", b.dir / "gc.jsonl"}};
    label.out = b.dir / "labels";
    CHECK(cmd_label(label, b.log) == kExitOk);
    const auto gc = read_slice(b.dir / "labels/slice_GC.csv");
    CHECK(gc.rows[0][index_of(DiseaseCategory::kPleuralEffusion)] == AssertionStatus::kPositive);
    CHECK(read_file(b.dir / "labels/label_errors.csv").find("odd") != std::string::npos);
  }

  TEST_CASE("fatal configurations") {
    Bundle b;
    RunConfig c;
    c.manifest = b.dir / "missing.csv";
    c.out = b.dir / "o";
    CHECK(cmd_parse(c, b.log) == kExitFatal);
    c.interchange = {{"NOPE", b.dir / "x.jsonl"}};
    CHECK(cmd_label(c, b.log) == kExitFatal);
    RunConfig s;
    s.n = 0;
    s.out = b.dir / "s";
    CHECK(cmd_synth(s, b.log) == kExitFatal);
    RunConfig e;
    e.out = b.dir / "e";
    CHECK(cmd_evaluate(e, b.log) == kExitFatal);
  }
}

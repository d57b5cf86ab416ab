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

#include "cxrlabel/error.hpp"
#include "cxrlabel/rulelab.hpp"
#include "support/fixtures.hpp"

using namespace cxrlabel;

namespace {

using C = DiseaseCategory;
constexpr auto P = AssertionStatus::kPositive;
constexpr auto N = AssertionStatus::kNegative;
constexpr auto U = AssertionStatus::kUncertain;
constexpr auto A = AssertionStatus::kAbsent;

AssertionStatus status_of(std::string_view text, C category) {
  const Labeler lab(Matcher::builtin(), CueLexicon::builtin());
  return lab.label(text)[index_of(category)];
}

std::string lexicon_error(std::string_view text) {
  try {
    CueLexicon::parse(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
    return e.what();
  }
  FAIL("lexicon parsed unexpectedly");
  return {};
}

}  // namespace

TEST_SUITE("rulelab") {
  TEST_CASE("tokenize") {
    const auto t = tokenize("No PTX; 2.5cm");
    REQUIRE(t.size() == 4);
    CHECK(t[0].text == "no");
    CHECK(t[1].span == CharRange{3, 6});
    CHECK(t[3].text == "5cm");
  }

  TEST_CASE("basic polarity") {
    CHECK(status_of("Right pleural effusion.", C::kPleuralEffusion) == P);
    CHECK(status_of("No pleural effusion.", C::kPleuralEffusion) == N);
    CHECK(status_of("Possible pleural effusion.", C::kPleuralEffusion) == U);
    CHECK(status_of("Pneumothorax is not seen.", C::kPneumothorax) == N);
    CHECK(status_of("Lungs are clear.", C::kPneumothorax) == A);
  }

  TEST_CASE("uncertainty outranks negation inside one window") {
    CHECK(status_of("No change, pneumonia cannot be excluded.", C::kPneumonia) == U);
    CHECK(status_of("Not likely pneumonia.", C::kPneumonia) == U);
  }

  TEST_CASE("cues do not cross sentence or scope breaks") {
    CHECK(status_of("No effusion. Pneumothorax on the left.", C::kPneumothorax) == P);
    CHECK(status_of("No effusion; pneumothorax on the left.", C::kPneumothorax) == P);
    CHECK(status_of("No effusion but small pneumothorax.", C::kPneumothorax) == P);
    CHECK(status_of("No effusion\n\npneumothorax", C::kPneumothorax) == P);
    CHECK(status_of("No effusion or pneumothorax.", C::kPneumothorax) == N);
  }

  TEST_CASE("windows are bounded") {
    CHECK(status_of("No acute abnormality is seen in the chest and there is pneumothorax",
                    C::kPneumothorax) == P);
    CHECK(status_of("Measures 2.5 no pneumothorax", C::kPneumothorax) == N);
  }

  TEST_CASE("precedence over several mentions") {
    CHECK(status_of("No pneumonia. Pneumonia at the base.", C::kPneumonia) == P);
    CHECK(status_of("No pneumonia. Possible pneumonia at the base.", C::kPneumonia) == U);
  }

  TEST_CASE("NoFindings derivation") {
    const Labeler lab(Matcher::builtin(), CueLexicon::builtin());
    CHECK(lab.label("No pneumothorax.")[index_of(C::kNoFindings)] == P);
    CHECK(lab.label("Normal chest.")[index_of(C::kNoFindings)] == P);
    CHECK(lab.label("Small pneumothorax.")[index_of(C::kNoFindings)] == A);
  }

  TEST_CASE("mention detection on the discrepancy impressions") {
    for (const auto& row : fixtures::discrepancy_cases()) {
      CAPTURE(row.disease);
      bool found = false;
      for (const auto& m : detect_mentions(Matcher::builtin(), row.impression)) {
        found |= m.category == row.category;
      }
      CHECK(found);
    }
    const auto five = detect_mentions(Matcher::builtin(), fixtures::discrepancy_cases()[4].impression);
    bool atel = false, pna = false;
    for (const auto& m : five) {
      atel |= m.category == C::kAtelectasis;
      pna |= m.category == C::kPneumonia;
    }
    CHECK(atel);
    CHECK(pna);
  }

  TEST_CASE("spans index the original text") {
    const std::string text = "FOCAL Consolidation.";
    const auto ms = Labeler(Matcher::builtin(), CueLexicon::builtin()).mentions(text);
    REQUIRE(ms.size() == 1);
    CHECK(text.substr(ms[0].span.begin, ms[0].span.size()) == "Consolidation");
  }

  TEST_CASE("lexicon parsing") {
    const auto lex = CueLexicon::parse(
        "# c\n[window]\npre 2\npost 1\n[pre_negation]\nno\nfree of\n[uncertainty]\nmay\n");
    CHECK(lex.pre_window == 2);
    CHECK(lex.post_window == 1);
    REQUIRE(lex.pre_negation.size() == 2);
    CHECK(lex.pre_negation[1] == CuePhrase{"free", "of"});
    CHECK(classify_assertion(lex, "no a b pneumonia", {7, 16}) == P);
    CHECK(classify_assertion(lex, "no a pneumonia", {5, 14}) == N);
  }

  TEST_CASE("lexicon errors name the line") {
    CHECK(lexicon_error("[bogus]\n").find("line 1") != std::string::npos);
    CHECK(lexicon_error("no\n").find("line 1") != std::string::npos);
    CHECK(lexicon_error("[window]\npre x\n").find("line 2") != std::string::npos);
    CHECK(lexicon_error("[window]\npost 0\n").find("at least 1") != std::string::npos);
    const auto dup = lexicon_error("[pre_negation]\nno\n[uncertainty]\n\nNo\n");
    CHECK(dup.find("line 5") != std::string::npos);
    CHECK(dup.find("pre_negation") != std::string::npos);
  }
}

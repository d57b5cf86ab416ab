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

#ifndef CXRLABEL_TESTS_FIXTURES_HPP_
#define CXRLABEL_TESTS_FIXTURES_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "cxrlabel/types.hpp"

namespace fixtures {

// Rater order for the vote arrays below.
inline const std::vector<std::string> kDiscrepancySystems = {"CheXpert", "CheXbert", "AWS",
                                                        "AZ",       "GC",       "SP"};

struct DiscrepancyCase {
  std::string_view disease;
  cxrlabel::DiseaseCategory category;
  std::string_view impression;
  // Votes in kDiscrepancySystems order.
  std::array<cxrlabel::AssertionStatus, 6> votes;
};

inline std::vector<DiscrepancyCase> discrepancy_cases() {
  using cxrlabel::DiseaseCategory;
  constexpr auto P = cxrlabel::AssertionStatus::kPositive;
  constexpr auto N = cxrlabel::AssertionStatus::kNegative;
  constexpr auto U = cxrlabel::AssertionStatus::kUncertain;
  //                   CheXpert CheXbert AWS AZ GC SP
  return {
      {"pneumothorax", DiseaseCategory::kPneumothorax,
       "1. Pectus bars in place. 2. No appreciable pneumothorax on the left.",
       {U, U, U, N, U, P}},
      {"pneumonia", DiseaseCategory::kPneumonia,
       "Findings consistent with viral or reactive airways disease without focal pneumonia.",
       {N, N, N, P, N, U}},
      {"cardiomegaly", DiseaseCategory::kCardiomegaly,
       "No acute cardiopulmonary abnormality with stable cardiomegaly and fracture of one of "
       "the pacemakers leads.",
       {P, P, U, P, P, N}},
      {"consolidation", DiseaseCategory::kConsolidation,
       "Right suprahilar opacity may represent developing consolidation, superimposed on "
       "findings of viral or reactive airways disease.",
       {U, U, P, P, U, P}},
      {"atelectasis", DiseaseCategory::kAtelectasis,
       "Viral/reactive airway disease, superimposed with right upper and left lower lobe "
       "airspace disease such as atelectasis/pneumonia.",
       {U, U, P, P, P, N}},
      {"edema", DiseaseCategory::kEdema,
       "Mildly prominent pulmonary vasculature. Cardiac size appears mildly enlarged. No focal "
       "airspace disease or overt pulmonary edema is suspected.",
       {N, N, N, U, P, N}},
      {"lung lesion", DiseaseCategory::kLungLesion,
       "No consolidation. Small oval lucency in the left upper lobe. It is not clear whether "
       "this represents superimposed shadows (mock effect) or a true finding. A short-term "
       "follow-up two-view chest x-ray is suggested to evaluate the persistence of this "
       "finding. If it does persist, it may represent a tiny bleb, bulla, or pneumatocele. The "
       "surrounding lung appears normal making a cavitory lesion less likely.",
       {P, U, P, U, P, U}},
      {"lung opacity", DiseaseCategory::kLungOpacity,
       "Poorly defined left lower lobe opacity concerning for developing pneumonia.",
       {P, P, P, U, U, U}},
  };
}

// Expected plurality consensus, in case order. Written down before any voting code ran.
inline std::array<cxrlabel::AssertionStatus, 8> discrepancy_expected_plurality() {
  constexpr auto P = cxrlabel::AssertionStatus::kPositive;
  constexpr auto N = cxrlabel::AssertionStatus::kNegative;
  constexpr auto U = cxrlabel::AssertionStatus::kUncertain;
  return {U, N, P, U, P, N, P, U};
}

}  // namespace fixtures

#endif  // CXRLABEL_TESTS_FIXTURES_HPP_

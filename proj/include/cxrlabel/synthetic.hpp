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

#ifndef CXRLABEL_SYNTHETIC_HPP_
#define CXRLABEL_SYNTHETIC_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cxrlabel/corpus.hpp"
#include "cxrlabel/types.hpp"

namespace cxrlabel {

// Sampling profile for synthetic reports. For each disease independently:
// with probability prevalence[d] the finding is reported, hedged with
// probability `hedging` (Uncertain) and asserted otherwise (Positive). A
// disease that is not reported is explicitly ruled out with probability
// `negation` (Negative) and left unmentioned otherwise (Absent).
struct SynthProfile {
  std::array<double, kDiseaseCount> prevalence{};
  double hedging = 0.15;
  double negation = 0.15;

  static SynthProfile defaults();
  static SynthProfile uniform(double prevalence, double hedging,
                              double negation);
  // Reads {"prevalence": {"Pneumonia": 0.2, ...}, "hedging": .., "negation": ..};
  // categories not listed keep the default prevalence.
  static SynthProfile from_json(std::string_view text);

  // Throws Error(kConfigError) when any probability lies outside [0,1].
  void validate() const;
};

struct SyntheticCorpus {
  std::vector<Report> reports;
  std::vector<StatusVector> truth;  // parallel to reports
};

// Deterministic for a fixed (seed, n, profile); uses its own bit-exact
// uniform mapping so output does not depend on the standard library.
// Throws Error(kConfigError) for n == 0 or an invalid profile.
SyntheticCorpus generate_synthetic(std::uint64_t seed, std::size_t n,
                                   const SynthProfile& profile);

// Surface phrases the generator uses for a disease category.
std::span<const std::string_view> synthetic_phrases(DiseaseCategory category);
// Impression sentences used when no finding is present.
std::span<const std::string_view> no_findings_sentences();

}  // namespace cxrlabel

#endif  // CXRLABEL_SYNTHETIC_HPP_

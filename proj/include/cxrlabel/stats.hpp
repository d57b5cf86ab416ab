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

#ifndef CXRLABEL_STATS_HPP_
#define CXRLABEL_STATS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cxrlabel/adapters.hpp"
#include "cxrlabel/label_matrix.hpp"
#include "cxrlabel/types.hpp"

namespace cxrlabel {

enum class KappaCondition { kAll, kExcludingAbsent };

std::string_view to_string(KappaCondition condition);

struct KappaResult {
  DiseaseCategory category = DiseaseCategory::kNoFindings;
  KappaCondition condition = KappaCondition::kAll;
  std::optional<double> kappa;  // unset when undefined
  std::size_t n_items = 0;
  std::size_t n_raters = 0;
  double observed = 0.0;  // mean per-item agreement
  double expected = 0.0;  // chance agreement
  bool degenerate = false;
};

using StatusCounts = std::array<std::uint64_t, kStatusCount>;

// Fleiss' kappa from per-item counts over the four statuses. Every item must
// have the same total n >= 2, else Error(kArityError). Undefined (and
// flagged degenerate) when there are no items or chance agreement is 1.
KappaResult fleiss_kappa(std::span<const StatusCounts> items);
// `ratings` is items x raters, row-major, holding AssertionStatus bytes.
KappaResult fleiss_kappa(std::span<const std::uint8_t> ratings, std::size_t n_items,
                         std::size_t n_raters);

// Per-category kappa over the listed systems as raters. ExcludingAbsent
// drops exams where every rater said Absent for that category.
std::vector<KappaResult> kappa_conditioned(const LabelMatrix& matrix,
                                           std::span<const SystemId> systems,
                                           KappaCondition condition);

struct TestResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  std::optional<double> adjusted_p;
  bool degenerate = false;
  std::string note;
};

// Pearson chi-square test of independence on an R x C table of counts.
// Rows and columns with a zero margin are dropped (noted). Error
// (kDegenerateInput) when the total is zero; ragged rows are
// Error(kArityError).
TestResult chi_square_independence(const std::vector<std::vector<std::uint64_t>>& table);

// Two-sided paired t-test on a - b. Error(kArityError) on a length mismatch
// or fewer than two pairs. All-zero differences give statistic 0, p 1 and
// the degenerate flag; constant nonzero differences give an infinite
// statistic, p 0 and the flag.
TestResult paired_t_test(std::span<const double> a, std::span<const double> b);

// min(1, p * m) for each p. Error(kRangeError) for p outside [0,1] and
// Error(kArityError) when m is smaller than the number of p-values.
std::vector<double> bonferroni(std::span<const double> p_values, std::size_t m);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // population standard deviation
  std::size_t n = 0;
};

// NaN entries are skipped; an empty input gives NaN mean and sd.
MeanSd mean_sd(std::span<const double> values);

enum class AccuracyDomain {
  kAllExams,          // every exam counts
  kConsensusPresent,  // only exams whose consensus is not Absent
};

std::string_view to_string(AccuracyDomain domain);

struct AccuracyCell {
  std::size_t matches = 0;
  std::size_t counted = 0;
  double accuracy() const;  // NaN when nothing was counted
};

struct AccuracyTable {
  AccuracyDomain domain = AccuracyDomain::kAllExams;
  std::vector<SystemId> systems;
  std::vector<std::array<AccuracyCell, kCategoryCount>> cells;  // [system][category]
  std::vector<MeanSd> by_system;                // across categories
  std::array<MeanSd, kCategoryCount> by_category{};  // across systems
  MeanSd overall;                               // across all defined cells
};

// Exact-status agreement of each system with the consensus lane. The
// consensus matrix must hold one system and the same exam set as `matrix`,
// else Error(kPipelineOrderError).
AccuracyTable assertion_accuracy(const LabelMatrix& matrix, const LabelMatrix& consensus,
                                 std::span<const SystemId> systems, AccuracyDomain domain);

}  // namespace cxrlabel

#endif  // CXRLABEL_STATS_HPP_

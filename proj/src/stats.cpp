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

#include "cxrlabel/stats.hpp"

#include <cmath>
#include <limits>

#include "cxrlabel/error.hpp"
#include "cxrlabel/kernels.hpp"
#include "cxrlabel/special_functions.hpp"

namespace cxrlabel {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr auto kAbsentByte = static_cast<std::uint8_t>(AssertionStatus::kAbsent);

// Kappa from the sum of squared per-item counts and per-status totals.
KappaResult kappa_from_sums(std::uint64_t n_items, std::uint64_t n_raters,
                            std::uint64_t sum_sq, const StatusCounts& totals) {
  KappaResult r;
  r.n_items = n_items;
  r.n_raters = n_raters;
  if (n_items == 0) {
    r.degenerate = true;
    return r;
  }
  const std::uint64_t nn = n_items * n_raters;
  r.observed = static_cast<double>(sum_sq - nn) /
               (static_cast<double>(nn) * static_cast<double>(n_raters - 1));
  std::uint64_t totals_sq = 0;
  for (auto t : totals) totals_sq += t * t;
  r.expected = static_cast<double>(totals_sq) / (static_cast<double>(nn) * static_cast<double>(nn));
  if (totals_sq == nn * nn) {
    r.expected = 1.0;
    r.degenerate = true;
    return r;
  }
  r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  return r;
}

}  // namespace

std::string_view to_string(KappaCondition condition) {
  return condition == KappaCondition::kAll ? "All" : "ExcludingAbsent";
}

KappaResult fleiss_kappa(std::span<const StatusCounts> items) {
  std::uint64_t n = 0;
  std::uint64_t sum_sq = 0;
  StatusCounts totals{};
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < kStatusCount; ++j) {
      row += items[i][j];
      sum_sq += items[i][j] * items[i][j];
      totals[j] += items[i][j];
    }
    if (i == 0) n = row;
    if (row != n) {
      throw Error(ErrorCode::kArityError, "item " + std::to_string(i) + " has " +
                                              std::to_string(row) + " ratings, expected " +
                                              std::to_string(n));
    }
  }
  if (!items.empty() && n < 2) throw Error(ErrorCode::kArityError, "kappa needs at least two raters");
  return kappa_from_sums(items.size(), n, sum_sq, totals);
}

KappaResult fleiss_kappa(std::span<const std::uint8_t> ratings, std::size_t n_items,
                         std::size_t n_raters) {
  if (ratings.size() != n_items * n_raters) {
    throw Error(ErrorCode::kArityError, "ratings table is not items x raters");
  }
  std::vector<StatusCounts> items(n_items, StatusCounts{});
  for (std::size_t i = 0; i < n_items; ++i) {
    for (std::size_t r = 0; r < n_raters; ++r) {
      const auto s = ratings[i * n_raters + r];
      if (s >= kStatusCount) throw Error(ErrorCode::kRangeError, "rating outside the status range");
      ++items[i][s];
    }
  }
  if (n_items > 0 && n_raters < 2) throw Error(ErrorCode::kArityError, "kappa needs at least two raters");
  auto r = fleiss_kappa(items);
  r.n_raters = n_raters;
  return r;
}

std::vector<KappaResult> kappa_conditioned(const LabelMatrix& matrix,
                                           std::span<const SystemId> systems,
                                           KappaCondition condition) {
  std::vector<std::size_t> idx;
  for (const auto& s : systems) idx.push_back(matrix.require_system(s));
  if (idx.size() < 2) throw Error(ErrorCode::kArityError, "kappa needs at least two raters");
  if (idx.size() > 255) throw Error(ErrorCode::kArityError, "kappa supports at most 255 raters");

  const auto& k = kernels::active();
  const std::size_t n = matrix.exam_count();
  std::vector<KappaResult> out;
  std::array<std::vector<std::uint8_t>, kStatusCount> acc;
  std::vector<std::uint8_t> keep(n);
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    const auto category = category_at(c);
    for (std::size_t j = 0; j < kStatusCount; ++j) {
      acc[j].assign(n, 0);
      for (auto s : idx) {
        k.accumulate_indicator(matrix.lane(s, category).data(), n,
                               static_cast<std::uint8_t>(j), acc[j].data());
      }
    }
    std::fill(keep.begin(), keep.end(), 1);
    if (condition == KappaCondition::kExcludingAbsent) {
      std::vector<std::uint8_t> all_absent(n, 1);
      for (auto s : idx) {
        k.and_equal_mask(all_absent.data(), matrix.lane(s, category).data(), n, kAbsentByte);
      }
      for (std::size_t e = 0; e < n; ++e) keep[e] = all_absent[e] ^ 1;
    }
    std::uint64_t items = 0, sum_sq = 0;
    StatusCounts totals{};
    for (std::size_t e = 0; e < n; ++e) {
      if (!keep[e]) continue;
      ++items;
      for (std::size_t j = 0; j < kStatusCount; ++j) {
        const std::uint64_t v = acc[j][e];
        sum_sq += v * v;
        totals[j] += v;
      }
    }
    auto r = kappa_from_sums(items, idx.size(), sum_sq, totals);
    r.category = category;
    r.condition = condition;
    out.push_back(r);
  }
  return out;
}

TestResult chi_square_independence(const std::vector<std::vector<std::uint64_t>>& table) {
  const std::size_t rows = table.size();
  const std::size_t cols = rows ? table[0].size() : 0;
  for (const auto& r : table) {
    if (r.size() != cols) throw Error(ErrorCode::kArityError, "contingency rows differ in length");
  }
  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = static_cast<double>(table[i][j]);
      row_sum[i] += v;
      col_sum[j] += v;
      total += v;
    }
  }
  if (total == 0.0) throw Error(ErrorCode::kDegenerateInput, "contingency table is empty");

  std::vector<std::size_t> keep_r, keep_c;
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_sum[i] > 0) keep_r.push_back(i);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (col_sum[j] > 0) keep_c.push_back(j);
  }
  TestResult t;
  const std::size_t dropped_r = rows - keep_r.size(), dropped_c = cols - keep_c.size();
  if (dropped_r || dropped_c) {
    t.note = "dropped " + std::to_string(dropped_r) + " empty row(s) and " +
             std::to_string(dropped_c) + " empty column(s)";
  }
  if (keep_r.size() < 2 || keep_c.size() < 2) {
    t.degenerate = true;
    t.p_value = 1.0;
    if (!t.note.empty()) t.note += "; ";
    t.note += "fewer than two non-empty rows or columns";
    return t;
  }
  double stat = 0.0;
  for (auto i : keep_r) {
    for (auto j : keep_c) {
      const double e = row_sum[i] * col_sum[j] / total;
      const double d = static_cast<double>(table[i][j]) - e;
      stat += d * d / e;
    }
  }
  t.statistic = stat;
  t.dof = static_cast<double>((keep_r.size() - 1) * (keep_c.size() - 1));
  t.p_value = chi_square_sf(stat, t.dof);
  return t;
}

TestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kArityError, "paired samples differ in length (" +
                                            std::to_string(a.size()) + " vs " +
                                            std::to_string(b.size()) + ")");
  }
  const std::size_t n = a.size();
  if (n < 2) throw Error(ErrorCode::kArityError, "paired t-test needs at least two pairs");
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  bool all_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) all_zero = false;
    ss += (d - mean) * (d - mean);
  }
  TestResult t;
  t.dof = static_cast<double>(n - 1);
  if (all_zero) {
    t.degenerate = true;
    t.note = "all differences are zero";
    return t;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0.0) {
    t.degenerate = true;
    t.statistic = mean > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    t.p_value = 0.0;
    t.note = "constant nonzero differences";
    return t;
  }
  t.statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
  t.p_value = student_t_two_sided(t.statistic, t.dof);
  return t;
}

std::vector<double> bonferroni(std::span<const double> p_values, std::size_t m) {
  if (m < p_values.size()) {
    throw Error(ErrorCode::kArityError, "Bonferroni m is smaller than the number of p-values");
  }
  std::vector<double> out;
  out.reserve(p_values.size());
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kRangeError, "p-value outside [0,1]: " + std::to_string(p));
    }
    out.push_back(std::min(1.0, p * static_cast<double>(m)));
  }
  return out;
}

MeanSd mean_sd(std::span<const double> values) {
  MeanSd r;
  double sum = 0.0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++r.n;
  }
  if (r.n == 0) return {kNaN, kNaN, 0};
  r.mean = sum / static_cast<double>(r.n);
  double ss = 0.0;
  for (double v : values) {
    if (!std::isnan(v)) ss += (v - r.mean) * (v - r.mean);
  }
  r.sd = std::sqrt(ss / static_cast<double>(r.n));
  return r;
}

std::string_view to_string(AccuracyDomain domain) {
  return domain == AccuracyDomain::kAllExams ? "all_exams" : "consensus_present";
}

double AccuracyCell::accuracy() const {
  return counted ? static_cast<double>(matches) / static_cast<double>(counted) : kNaN;
}

AccuracyTable assertion_accuracy(const LabelMatrix& matrix, const LabelMatrix& consensus,
                                 std::span<const SystemId> systems, AccuracyDomain domain) {
  if (consensus.system_count() != 1) {
    throw Error(ErrorCode::kPipelineOrderError, "consensus matrix must hold exactly one lane set");
  }
  const std::size_t n = matrix.exam_count();
  if (consensus.exam_count() != n) {
    throw Error(ErrorCode::kPipelineOrderError, "consensus covers a different number of exams");
  }
  // Align consensus lanes to the matrix exam order.
  bool same_order = consensus.exam_ids() == matrix.exam_ids();
  std::vector<std::size_t> perm(n);
  if (!same_order) {
    for (std::size_t e = 0; e < n; ++e) {
      auto ce = consensus.exam_index(matrix.exam_ids()[e]);
      if (!ce) {
        throw Error(ErrorCode::kPipelineOrderError,
                    "consensus lacks exam " + matrix.exam_ids()[e]);
      }
      perm[e] = *ce;
    }
  }
  std::vector<std::size_t> idx;
  for (const auto& s : systems) idx.push_back(matrix.require_system(s));

  const auto& k = kernels::active();
  AccuracyTable t;
  t.domain = domain;
  t.systems.assign(systems.begin(), systems.end());
  t.cells.resize(idx.size());
  std::vector<std::uint8_t> ref(n);
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    const auto category = category_at(c);
    const auto lane = consensus.lane(0, category);
    for (std::size_t e = 0; e < n; ++e) ref[e] = same_order ? lane[e] : lane[perm[e]];
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const auto* a = matrix.lane(idx[s], category).data();
      AccuracyCell& cell = t.cells[s][c];
      if (domain == AccuracyDomain::kAllExams) {
        cell.matches = k.count_equal(a, ref.data(), n);
        cell.counted = n;
      } else {
        k.count_equal_where_ref_not(a, ref.data(), n, kAbsentByte, &cell.matches, &cell.counted);
      }
    }
  }
  std::vector<double> all;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    std::vector<double> row;
    for (const auto& cell : t.cells[s]) row.push_back(cell.accuracy());
    t.by_system.push_back(mean_sd(row));
    all.insert(all.end(), row.begin(), row.end());
  }
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    std::vector<double> col;
    for (std::size_t s = 0; s < idx.size(); ++s) col.push_back(t.cells[s][c].accuracy());
    t.by_category[c] = mean_sd(col);
  }
  t.overall = mean_sd(all);
  return t;
}

}  // namespace cxrlabel

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

#include "cxrlabel/consensus.hpp"

#include <algorithm>

#include "cxrlabel/csv.hpp"
#include "cxrlabel/error.hpp"

namespace cxrlabel {

std::string_view to_string(VoteMode mode) {
  return mode == VoteMode::kPlurality ? "plurality" : "strict";
}

std::optional<VoteMode> parse_vote_mode(std::string_view name) {
  if (name == "plurality") return VoteMode::kPlurality;
  if (name == "strict") return VoteMode::kStrictMajority;
  return std::nullopt;
}

VoteOutcome vote_counts(const VoteCounts& counts, VoteMode mode) {
  VoteOutcome out;
  out.counts = counts;
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw Error(ErrorCode::kArityError, "vote needs at least one status");

  const auto top = *std::max_element(counts.begin(), counts.end());
  std::size_t leaders = 0;
  std::size_t winner = 0;
  for (std::size_t s = 0; s < kStatusCount; ++s) {
    if (counts[s] == top) {
      ++leaders;
      winner = s;
    }
  }
  const bool decided = mode == VoteMode::kPlurality ? leaders == 1 : 2 * top > total;
  if (decided) {
    out.consensus = static_cast<AssertionStatus>(winner);
  } else {
    out.consensus = AssertionStatus::kUncertain;
    out.tie = true;
  }
  return out;
}

VoteOutcome vote(std::span<const AssertionStatus> statuses, VoteMode mode) {
  VoteCounts counts{};
  for (auto s : statuses) ++counts[static_cast<std::size_t>(s)];
  return vote_counts(counts, mode);
}

LabelMatrix ConsensusMatrix::as_matrix(const SystemId& name) const {
  LabelMatrix m(exam_ids, {name});
  for (std::size_t e = 0; e < exam_ids.size(); ++e) {
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      m.set(0, category_at(c), e, cells[e * kCategoryCount + c].consensus);
    }
  }
  return m;
}

ConsensusMatrix build_pseudo_ground_truth(const LabelMatrix& matrix,
                                          std::span<const SystemId> systems,
                                          VoteMode mode) {
  if (systems.empty()) throw Error(ErrorCode::kArityError, "consensus needs at least one system");
  std::vector<std::size_t> idx;
  for (const auto& s : systems) idx.push_back(matrix.require_system(s));

  ConsensusMatrix out;
  out.exam_ids = matrix.exam_ids();
  out.systems.assign(systems.begin(), systems.end());
  out.mode = mode;
  const std::size_t n = matrix.exam_count();
  std::vector<VoteCounts> counts(n * kCategoryCount, VoteCounts{});
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    for (auto s : idx) {
      const auto lane = matrix.lane(s, category_at(c));
      for (std::size_t e = 0; e < n; ++e) ++counts[e * kCategoryCount + c][lane[e]];
    }
  }
  out.cells.reserve(counts.size());
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      const auto v = vote_counts(counts[e * kCategoryCount + c], mode);
      out.cells.push_back({out.exam_ids[e], category_at(c), v.counts, v.consensus, v.tie});
    }
  }
  return out;
}

std::string format_consensus(const ConsensusMatrix& consensus) {
  std::string systems;
  for (const auto& s : consensus.systems) systems += (systems.empty() ? "" : ",") + s;
  std::string out = "# cxrlabel vote=" + std::string(to_string(consensus.mode)) +
                    " systems=" + systems + "\n";
  out += csv::format_row({"exam_id", "category", "consensus", "tie", "pos", "neg", "unc", "abs"});
  for (const auto& r : consensus.cells) {
    out += csv::format_row({r.exam_id, std::string(to_string(r.category)),
                            std::string(to_string(r.consensus)), r.tie ? "true" : "false",
                            std::to_string(r.counts[0]), std::to_string(r.counts[1]),
                            std::to_string(r.counts[2]), std::to_string(r.counts[3])});
  }
  return out;
}

}  // namespace cxrlabel

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

#ifndef CXRLABEL_CONSENSUS_HPP_
#define CXRLABEL_CONSENSUS_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cxrlabel/adapters.hpp"
#include "cxrlabel/label_matrix.hpp"
#include "cxrlabel/types.hpp"

namespace cxrlabel {

enum class VoteMode {
  kPlurality,       // unique top count wins; a shared top count is a tie
  kStrictMajority,  // more than half of the votes, otherwise a tie
};

std::string_view to_string(VoteMode mode);
std::optional<VoteMode> parse_vote_mode(std::string_view name);

using VoteCounts = std::array<std::size_t, kStatusCount>;  // indexed by status

struct VoteOutcome {
  VoteCounts counts{};
  AssertionStatus consensus = AssertionStatus::kAbsent;
  bool tie = false;  // no winner under the rule; consensus is Uncertain
};

// Throws Error(kArityError) for an empty list.
VoteOutcome vote(std::span<const AssertionStatus> statuses,
                 VoteMode mode = VoteMode::kPlurality);
VoteOutcome vote_counts(const VoteCounts& counts, VoteMode mode = VoteMode::kPlurality);

struct ConsensusResult {
  std::string exam_id;
  DiseaseCategory category;
  VoteCounts counts{};
  AssertionStatus consensus = AssertionStatus::kAbsent;
  bool tie = false;
};

// Consensus of the listed systems for every (exam, category) cell.
struct ConsensusMatrix {
  std::vector<std::string> exam_ids;
  std::vector<SystemId> systems;
  VoteMode mode = VoteMode::kPlurality;
  // Row-major: exam * kCategoryCount + category.
  std::vector<ConsensusResult> cells;

  const ConsensusResult& at(std::size_t exam, DiseaseCategory category) const {
    return cells[exam * kCategoryCount + index_of(category)];
  }
  // The consensus as a one-system label matrix named `name`.
  LabelMatrix as_matrix(const SystemId& name = "CONSENSUS") const;
};

// Throws Error(kRegistryError) for a system missing from the matrix and
// Error(kArityError) for an empty system list.
ConsensusMatrix build_pseudo_ground_truth(const LabelMatrix& matrix,
                                          std::span<const SystemId> systems,
                                          VoteMode mode = VoteMode::kPlurality);

// CSV with header exam_id,category,consensus,tie,pos,neg,unc,abs.
std::string format_consensus(const ConsensusMatrix& consensus);

}  // namespace cxrlabel

#endif  // CXRLABEL_CONSENSUS_HPP_

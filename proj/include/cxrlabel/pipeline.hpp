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

#ifndef CXRLABEL_PIPELINE_HPP_
#define CXRLABEL_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cxrlabel/adapters.hpp"
#include "cxrlabel/chexmap.hpp"
#include "cxrlabel/consensus.hpp"
#include "cxrlabel/corpus.hpp"

namespace cxrlabel {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kTruthSystem = "TRUTH";

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitFatal = 2;

using SystemPath = std::pair<SystemId, std::filesystem::path>;

struct RunConfig {
  std::filesystem::path manifest;
  std::filesystem::path corpus;  // archive written by `parse`
  std::vector<SystemPath> interchange;
  std::optional<std::filesystem::path> ruleset;
  std::optional<std::filesystem::path> lexicon;
  SectionScope sections = SectionScope::kImpression;
  VoteMode vote = VoteMode::kPlurality;
  std::filesystem::path out;
  unsigned threads = 1;
  bool rulelab = true;

  // evaluate
  std::vector<std::filesystem::path> label_dirs;
  std::vector<SystemPath> slices;
  std::vector<SystemPath> references;
  bool pairwise_chi_square = false;

  // synth
  std::uint64_t seed = 7;
  std::size_t n = 100;
  std::optional<std::filesystem::path> profile;
  std::optional<double> hedging;
  std::optional<double> negation;
};

// Parses "SYS=path"; throws Error(kConfigError) when malformed.
SystemPath parse_system_path(std::string_view text);

// Sectioned-corpus archive: one JSON object per line with exam_id,
// age_months, sex, text and sections [{kind, begin, end, body_begin}].
std::string format_archive_line(const Report& report);
std::vector<Report> read_archive(const std::filesystem::path& path);

// Subcommands. Each writes under config.out, logs to `log`, and returns an
// exit code; library errors are caught and reported as fatal.
int cmd_parse(const RunConfig& config, std::ostream& log);
int cmd_label(const RunConfig& config, std::ostream& log);
int cmd_evaluate(const RunConfig& config, std::ostream& log);
int cmd_synth(const RunConfig& config, std::ostream& log);

}  // namespace cxrlabel

#endif  // CXRLABEL_PIPELINE_HPP_

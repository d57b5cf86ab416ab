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

#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cxrlabel/error.hpp"
#include "cxrlabel/pipeline.hpp"

namespace {

using cxrlabel::RunConfig;

std::vector<cxrlabel::SystemPath> to_system_paths(const std::vector<std::string>& items) {
  std::vector<cxrlabel::SystemPath> out;
  for (const auto& s : items) out.push_back(cxrlabel::parse_system_path(s));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chest radiograph report labeling and multi-system agreement toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cxrlabel::kVersion));

  RunConfig cfg;
  std::string manifest, corpus, out, ruleset, lexicon, profile;
  std::string sections = "impression", vote = "plurality";
  std::vector<std::string> interchange, slices, references, label_dirs;
  unsigned threads = 1;
  bool no_rulelab = false;
  double hedging = -1, negation = -1;

  auto threads_opt = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  };

  auto* parse = app.add_subcommand("parse", "Split reports into sections and write a corpus archive");
  parse->add_option("--manifest", manifest, "Manifest CSV: exam_id,age_months,sex,path")->required();
  parse->add_option("--out", out, "Output directory")->required();
  threads_opt(parse);

  auto* label = app.add_subcommand("label", "Produce per-system label slices");
  auto* label_src = label->add_option_group("source");
  label_src->add_option("--corpus", corpus, "Corpus archive written by parse");
  label_src->add_option("--manifest", manifest, "Manifest CSV (parsed on the fly)");
  label_src->require_option(1);
  label->add_option("--interchange", interchange, "SYSTEM=path of an interchange JSONL file")
      ->take_all();
  label->add_option("--ruleset", ruleset, "Category ruleset JSON (default: built in)");
  label->add_option("--lexicon", lexicon, "Cue lexicon (default: built in)");
  label->add_option("--sections", sections, "impression or both")
      ->check(CLI::IsMember({"impression", "both"}))
      ->capture_default_str();
  label->add_flag("--no-rulelab", no_rulelab, "Do not run the built-in rule labeler");
  label->add_option("--out", out, "Output directory")->required();
  threads_opt(label);

  auto* evaluate = app.add_subcommand("evaluate", "Consensus, agreement and accuracy statistics");
  evaluate->add_option("--labels", label_dirs, "Directory written by label (repeatable)")->take_all();
  evaluate->add_option("--slice", slices, "SYSTEM=path of a label slice CSV (repeatable)")->take_all();
  evaluate->add_option("--reference", references,
                       "REF=path of a reference slice to score every system against")
      ->take_all();
  evaluate->add_option("--vote", vote, "plurality or strict")
      ->check(CLI::IsMember({"plurality", "strict"}))
      ->capture_default_str();
  evaluate->add_flag("--pairwise-chi-square", cfg.pairwise_chi_square,
                     "Also run chi-square tests for every system pair");
  evaluate->add_option("--out", out, "Output directory")->required();
  threads_opt(evaluate);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
  synth->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  synth->add_option("--n", cfg.n, "Number of reports")->capture_default_str();
  synth->add_option("--profile", profile, "Profile JSON with prevalence, hedging, negation");
  synth->add_option("--hedging", hedging, "Override the hedging probability");
  synth->add_option("--negation", negation, "Override the negation probability");
  synth->add_option("--out", out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.manifest = manifest;
    cfg.corpus = corpus;
    cfg.out = out;
    if (!ruleset.empty()) cfg.ruleset = ruleset;
    if (!lexicon.empty()) cfg.lexicon = lexicon;
    if (!profile.empty()) cfg.profile = profile;
    if (hedging >= 0) cfg.hedging = hedging;
    if (negation >= 0) cfg.negation = negation;
    cfg.sections = *cxrlabel::parse_section_scope(sections);
    cfg.vote = *cxrlabel::parse_vote_mode(vote);
    cfg.interchange = to_system_paths(interchange);
    cfg.slices = to_system_paths(slices);
    cfg.references = to_system_paths(references);
    for (const auto& d : label_dirs) cfg.label_dirs.emplace_back(d);
    cfg.rulelab = !no_rulelab;
    cfg.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  } catch (const cxrlabel::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cxrlabel::kExitFatal;
  }

  if (*parse) return cxrlabel::cmd_parse(cfg, std::cerr);
  if (*label) return cxrlabel::cmd_label(cfg, std::cerr);
  if (*evaluate) return cxrlabel::cmd_evaluate(cfg, std::cerr);
  return cxrlabel::cmd_synth(cfg, std::cerr);
}

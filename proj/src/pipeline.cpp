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

#include "cxrlabel/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>

#include "cxrlabel/csv.hpp"
#include "cxrlabel/error.hpp"
#include "cxrlabel/kernels.hpp"
#include "cxrlabel/label_matrix.hpp"
#include "cxrlabel/lemmatizer.hpp"
#include "cxrlabel/normalize.hpp"
#include "cxrlabel/parallel.hpp"
#include "cxrlabel/rulelab.hpp"
#include "cxrlabel/stats.hpp"
#include "cxrlabel/synthetic.hpp"
#include "cxrlabel/text_util.hpp"
#include "json.hpp"

namespace cxrlabel {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
  }
  return kExitFatal;
}

void prepare_out(const fs::path& out) {
  if (out.empty()) throw Error(ErrorCode::kConfigError, "--out is required");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw Error(ErrorCode::kIoError, "cannot create output directory " + out.string());
  }
}

void require_file(const fs::path& p, const std::string& what) {
  if (!fs::exists(p)) throw Error(ErrorCode::kIoError, what + " not found: " + p.string());
}

// JSON cannot hold NaN or infinity; those become null.
json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json optional_number(const std::optional<double>& v) {
  return v ? number(*v) : json(nullptr);
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  return format_fixed(v, 6);
}

std::string header_comment(const std::map<std::string, std::string>& meta) {
  std::string out = "# cxrlabel";
  for (const auto& [k, v] : meta) out += " " + k + "=" + v;
  return out + "\n";
}

const Matcher& load_matcher(const RunConfig& c, std::optional<Matcher>& storage) {
  if (!c.ruleset) return Matcher::builtin();
  require_file(*c.ruleset, "ruleset");
  storage = Matcher::from_file(*c.ruleset);
  return *storage;
}

const CueLexicon& load_lexicon(const RunConfig& c, std::optional<CueLexicon>& storage) {
  if (!c.lexicon) return CueLexicon::builtin();
  require_file(*c.lexicon, "lexicon");
  storage = CueLexicon::from_file(*c.lexicon);
  return *storage;
}

}  // namespace

SystemPath parse_system_path(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == text.size()) {
    throw Error(ErrorCode::kConfigError,
                "expected SYSTEM=PATH, got '" + std::string(text) + "'");
  }
  return {std::string(text.substr(0, eq)), fs::path(std::string(text.substr(eq + 1)))};
}

std::string format_archive_line(const Report& r) {
  ordered_json rec;
  rec["exam_id"] = r.exam_id;
  rec["age_months"] = r.meta.age_months ? json(*r.meta.age_months) : json(nullptr);
  rec["sex"] = std::string(to_string(r.meta.sex));
  rec["text"] = r.raw_text;
  auto sections = ordered_json::array();
  for (const auto& s : r.sections) {
    ordered_json o;
    o["kind"] = std::string(to_string(s.kind));
    o["begin"] = s.range.begin;
    o["end"] = s.range.end;
    o["body_begin"] = s.body_begin;
    sections.push_back(std::move(o));
  }
  rec["sections"] = std::move(sections);
  return rec.dump();
}

std::vector<Report> read_archive(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open corpus archive " + path.string());
  std::vector<Report> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = path.string() + " line " + std::to_string(line_no);
    try {
      const json rec = json::parse(line);
      Report r;
      r.exam_id = rec.at("exam_id").get<std::string>();
      if (!rec.at("age_months").is_null()) r.meta.age_months = rec["age_months"].get<std::uint32_t>();
      r.meta.sex = parse_sex(rec.at("sex").get<std::string>());
      r.raw_text = rec.at("text").get<std::string>();
      for (const auto& s : rec.at("sections")) {
        auto kind = parse_section(s.at("kind").get<std::string>());
        Section sec;
        if (!kind) throw std::invalid_argument("unknown section kind");
        sec.kind = *kind;
        sec.range = CharRange{s.at("begin").get<std::size_t>(), s.at("end").get<std::size_t>()};
        sec.body_begin = s.at("body_begin").get<std::size_t>();
        if (sec.range.begin > sec.range.end || sec.range.end > r.raw_text.size() ||
            sec.body_begin < sec.range.begin || sec.body_begin > sec.range.end) {
          throw std::invalid_argument("section offsets out of range");
        }
        r.sections.push_back(sec);
      }
      if (!seen.insert(r.exam_id).second) {
        throw Error(ErrorCode::kDuplicateExam, where + ": exam id repeated: " + r.exam_id);
      }
      out.push_back(std::move(r));
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kConfigError, where + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------- parse

int cmd_parse(const RunConfig& c, std::ostream& log) {
  return guarded(log, [&] {
    if (c.manifest.empty()) throw Error(ErrorCode::kConfigError, "--manifest is required");
    CorpusLoad load = load_corpus(c.manifest, c.threads);
    prepare_out(c.out);
    std::string archive;
    for (const auto& r : load.reports) archive += format_archive_line(r) + '\n';
    write_file(c.out / "corpus.jsonl", archive);
    std::string errors = csv::format_row({"row", "exam_id", "message"});
    for (const auto& e : load.errors) {
      log << "warning: manifest row " << e.row << " (" << e.exam_id << "): " << e.message << '\n';
      errors += csv::format_row({std::to_string(e.row), e.exam_id, e.message});
    }
    write_file(c.out / "parse_errors.csv", errors);
    log << "parsed " << load.reports.size() << " reports, " << load.errors.size()
        << " errors\n";
    return load.errors.empty() ? kExitOk : kExitPartial;
  });
}

// ---------------------------------------------------------------- label

namespace {

struct LabelError {
  SystemId system;
  std::size_t line = 0;
  std::string exam_id;
  std::string message;
};

struct SystemOutcome {
  std::size_t total = 0;
  std::size_t retained = 0;
  std::size_t dropped = 0;
  std::size_t errors = 0;
};

}  // namespace

int cmd_label(const RunConfig& c, std::ostream& log) {
  return guarded(log, [&]() -> int {
    std::vector<Report> reports;
    std::vector<LoadError> load_errors;
    if (!c.corpus.empty()) {
      reports = read_archive(c.corpus);
    } else if (!c.manifest.empty()) {
      auto load = load_corpus(c.manifest, c.threads);
      reports = std::move(load.reports);
      load_errors = std::move(load.errors);
    } else {
      throw Error(ErrorCode::kConfigError, "--corpus or --manifest is required");
    }
    if (!c.rulelab && c.interchange.empty()) {
      throw Error(ErrorCode::kConfigError, "nothing to label: no interchange inputs and rulelab disabled");
    }
    std::optional<Matcher> matcher_storage;
    std::optional<CueLexicon> lexicon_storage;
    const Matcher& matcher = load_matcher(c, matcher_storage);
    const CueLexicon& lexicon = load_lexicon(c, lexicon_storage);
    const Lemmatizer& lemmatizer = Lemmatizer::builtin();
    const SystemRegistry registry = SystemRegistry::with_builtins();
    const AssertionMap amap = AssertionMap::builtin();

    // Fail on configuration problems before writing anything.
    std::set<SystemId> seen_systems;
    for (const auto& [sys, path] : c.interchange) {
      registry.get(sys);
      if (sys == kRuleLab && c.rulelab) {
        throw Error(ErrorCode::kConfigError,
                    "RULELAB interchange given while the built-in labeler also runs; "
                    "pass --no-rulelab to use the file");
      }
      if (!seen_systems.insert(sys).second) {
        throw Error(ErrorCode::kConfigError, "system given twice: " + sys);
      }
      require_file(path, "interchange file");
    }
    prepare_out(c.out);

    std::vector<std::string> exam_ids;
    std::unordered_map<std::string, std::size_t> exam_index;
    for (const auto& r : reports) {
      exam_index.emplace(r.exam_id, exam_ids.size());
      exam_ids.push_back(r.exam_id);
    }
    const std::size_t n = exam_ids.size();

    std::map<std::string, std::string> meta{{"sections", std::string(to_string(c.sections))},
                                            {"version", std::string(kVersion)}};
    std::vector<LabelError> errors;
    for (const auto& e : load_errors) errors.push_back({"", e.row, e.exam_id, e.message});
    std::map<SystemId, SystemOutcome> outcomes;
    bool some_input_failed = !load_errors.empty();

    auto write_outputs = [&](const SystemId& sys, const std::vector<StatusVector>& rows,
                             const std::vector<EntityMention>& mentions) {
      LabelSlice slice;
      slice.system = sys;
      slice.exam_ids = exam_ids;
      slice.rows = rows;
      slice.meta = meta;
      write_slice(c.out / ("slice_" + sys + ".csv"), slice);
      std::string lines;
      for (const auto& m : mentions) lines += to_interchange_line(m) + '\n';
      write_file(c.out / ("mentions_" + sys + ".jsonl"), lines);
    };

    for (const auto& [sys, path] : c.interchange) {
      IngestResult in = ingest(registry, sys, path);
      SystemOutcome& o = outcomes[sys];
      o.total = in.total;
      o.dropped = in.dropped;
      for (const auto& e : in.errors) errors.push_back({sys, e.line, "", e.message});
      o.errors += in.errors.size();

      std::vector<EntityMention> kept;
      for (auto& m : in.mentions) {
        if (!exam_index.count(m.exam_id)) {
          errors.push_back({sys, 0, m.exam_id, "mention refers to an exam not in the corpus"});
          ++o.errors;
          continue;
        }
        kept.push_back(std::move(m));
      }
      const std::vector<EntityMention> before = kept;
      for (const auto& e : normalize_mentions(kept, amap, lemmatizer)) {
        errors.push_back({sys, 0, before[e.index].exam_id, e.message});
        ++o.errors;
      }
      o.retained = kept.size();
      if (o.total > o.dropped && o.retained == 0) {
        log << "warning: every record of " << sys << " failed\n";
        some_input_failed = true;
      }

      std::vector<std::vector<EntityMention>> by_exam(n);
      for (auto& m : kept) by_exam[exam_index.at(m.exam_id)].push_back(m);
      std::vector<StatusVector> rows(n);
      parallel_for(n, c.threads, [&](std::size_t e) {
        rows[e] = reduce_report(by_exam[e], matcher, c.sections);
      });
      write_outputs(sys, rows, kept);
      log << sys << ": " << o.retained << " mentions kept, " << o.dropped << " dropped, "
          << o.errors << " errors\n";
    }

    if (c.rulelab) {
      std::vector<StatusVector> rows(n);
      std::vector<std::vector<EntityMention>> found(n);
      const Labeler labeler(matcher, lexicon);
      parallel_for(n, c.threads, [&](std::size_t e) {
        const Report& r = reports[e];
        std::vector<std::pair<DiseaseCategory, AssertionStatus>> evidence;
        for (const auto& s : r.sections) {
          if (!in_scope(c.sections, s.kind)) continue;
          const std::string_view body =
              std::string_view(r.raw_text).substr(s.body_begin, s.range.end - s.body_begin);
          for (const auto& lm : labeler.mentions(body)) {
            evidence.emplace_back(lm.category, lm.status);
            EntityMention m;
            m.exam_id = r.exam_id;
            m.system = kRuleLab;
            m.section = s.kind;
            m.span = CharRange{s.body_begin + lm.span.begin, s.body_begin + lm.span.end};
            m.surface_text = std::string(body.substr(lm.span.begin, lm.span.size()));
            m.normalized_text = lemmatizer.lemmatize(m.surface_text);
            m.raw_category = std::string(to_string(lm.category));
            m.raw_assertion = std::string(to_string(lm.status));
            m.assertion = lm.status;
            found[e].push_back(std::move(m));
          }
        }
        rows[e] = reduce_statuses(evidence);
      });
      std::vector<EntityMention> mentions;
      for (auto& f : found) {
        for (auto& m : f) mentions.push_back(std::move(m));
      }
      SystemOutcome& o = outcomes[kRuleLab];
      o.total = o.retained = mentions.size();
      write_outputs(kRuleLab, rows, mentions);
      log << kRuleLab << ": " << mentions.size() << " mentions in " << n << " reports\n";
    }

    std::string err_csv = csv::format_row({"system", "line", "exam_id", "message"});
    for (const auto& e : errors) {
      err_csv += csv::format_row(
          {e.system, e.line ? std::to_string(e.line) : "", e.exam_id, e.message});
    }
    write_file(c.out / "label_errors.csv", err_csv);

    ordered_json summary;
    summary["version"] = std::string(kVersion);
    ordered_json cfg;
    cfg["corpus"] = c.corpus.string();
    cfg["manifest"] = c.manifest.string();
    cfg["ruleset"] = c.ruleset ? c.ruleset->string() : "builtin";
    cfg["lexicon"] = c.lexicon ? c.lexicon->string() : "builtin";
    cfg["sections"] = std::string(to_string(c.sections));
    cfg["rulelab"] = c.rulelab;
    ordered_json inter = ordered_json::object();
    for (const auto& [sys, path] : c.interchange) inter[sys] = path.string();
    cfg["interchange"] = inter;
    summary["config"] = cfg;
    summary["exams"] = n;
    summary["load_errors"] = load_errors.size();
    ordered_json systems = ordered_json::object();
    for (const auto& [sys, o] : outcomes) {
      systems[sys] = {{"total", o.total}, {"retained", o.retained},
                      {"dropped", o.dropped}, {"errors", o.errors}};
    }
    summary["systems"] = systems;
    write_file(c.out / "label_summary.json", summary.dump(2) + "\n");
    return some_input_failed ? kExitPartial : kExitOk;
  });
}

// ---------------------------------------------------------------- evaluate

namespace {

std::string accuracy_csv(const AccuracyTable& t, const std::map<std::string, std::string>& meta) {
  std::string out = header_comment(meta);
  std::vector<std::string> head{"category"};
  for (const auto& s : t.systems) head.push_back(s);
  head.push_back("mean");
  head.push_back("sd");
  out += csv::format_row(head);
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    std::vector<std::string> row{std::string(to_string(category_at(c)))};
    for (std::size_t s = 0; s < t.systems.size(); ++s) row.push_back(fmt(t.cells[s][c].accuracy()));
    row.push_back(fmt(t.by_category[c].mean));
    row.push_back(fmt(t.by_category[c].sd));
    out += csv::format_row(row);
  }
  std::vector<std::string> mean_row{"mean"}, sd_row{"sd"};
  for (const auto& m : t.by_system) {
    mean_row.push_back(fmt(m.mean));
    sd_row.push_back(fmt(m.sd));
  }
  mean_row.push_back(fmt(t.overall.mean));
  mean_row.push_back(fmt(t.overall.sd));
  sd_row.push_back("");
  sd_row.push_back("");
  out += csv::format_row(mean_row);
  out += csv::format_row(sd_row);
  return out;
}

ordered_json accuracy_json(const AccuracyTable& t) {
  ordered_json j;
  j["domain"] = std::string(to_string(t.domain));
  ordered_json per = ordered_json::object();
  for (std::size_t s = 0; s < t.systems.size(); ++s) {
    ordered_json cats = ordered_json::object();
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      cats[std::string(to_string(category_at(c)))] = number(t.cells[s][c].accuracy());
    }
    per[t.systems[s]] = {{"mean", number(t.by_system[s].mean)},
                         {"sd", number(t.by_system[s].sd)},
                         {"categories", cats}};
  }
  j["systems"] = per;
  j["overall"] = {{"mean", number(t.overall.mean)}, {"sd", number(t.overall.sd)}};
  return j;
}

std::string kappa_row(const std::string& prefix_system, const KappaResult& k) {
  std::vector<std::string> row;
  if (!prefix_system.empty()) row.push_back(prefix_system);
  row.push_back(std::string(to_string(k.category)));
  row.push_back(std::string(to_string(k.condition)));
  row.push_back(k.kappa ? fmt(*k.kappa) : "NA");
  row.push_back(std::to_string(k.n_items));
  row.push_back(std::to_string(k.n_raters));
  row.push_back(fmt(k.observed));
  row.push_back(fmt(k.expected));
  row.push_back(k.degenerate ? "true" : "false");
  return csv::format_row(row);
}

ordered_json kappa_json(const KappaResult& k) {
  return {{"category", std::string(to_string(k.category))},
          {"condition", std::string(to_string(k.condition))},
          {"kappa", optional_number(k.kappa)},
          {"n_items", k.n_items},
          {"n_raters", k.n_raters},
          {"degenerate", k.degenerate}};
}

ordered_json test_json(const TestResult& t) {
  return {{"statistic", number(t.statistic)}, {"dof", t.dof},
          {"p_value", number(t.p_value)},     {"adjusted_p", optional_number(t.adjusted_p)},
          {"degenerate", t.degenerate},       {"note", t.note}};
}

std::string test_cells(const TestResult& t) {
  return fmt(t.statistic) + "," + fmt(t.dof) + "," + fmt(t.p_value) + "," +
         (t.adjusted_p ? fmt(*t.adjusted_p) : std::string("NA")) + "," +
         (t.degenerate ? "true" : "false") + "," + csv::escape(t.note);
}

TestResult safe_chi_square(const std::vector<std::vector<std::uint64_t>>& table) {
  try {
    return chi_square_independence(table);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateInput) throw;
    TestResult t;
    t.degenerate = true;
    t.note = "no mentions";
    return t;
  }
}

}  // namespace

int cmd_evaluate(const RunConfig& c, std::ostream& log) {
  return guarded(log, [&]() -> int {
    std::vector<LabelSlice> slices;
    std::map<SystemId, fs::path> mention_files;
    std::set<SystemId> seen;
    std::vector<std::string> inputs;
    auto add_slice = [&](LabelSlice s, const fs::path& from) {
      if (!seen.insert(s.system).second) {
        throw Error(ErrorCode::kConfigError, "system " + s.system + " given twice");
      }
      inputs.push_back(s.system + "=" + from.string());
      slices.push_back(std::move(s));
    };
    for (const auto& dir : c.label_dirs) {
      if (!fs::is_directory(dir)) throw Error(ErrorCode::kIoError, "label directory not found: " + dir.string());
      std::vector<fs::path> entries;
      for (const auto& e : fs::directory_iterator(dir)) entries.push_back(e.path());
      std::sort(entries.begin(), entries.end());
      for (const auto& p : entries) {
        const std::string name = p.filename().string();
        if (name.rfind("slice_", 0) == 0 && p.extension() == ".csv") {
          const std::string sys = name.substr(6, name.size() - 10);
          add_slice(read_slice(p, sys), p);
        } else if (name.rfind("mentions_", 0) == 0 && p.extension() == ".jsonl") {
          mention_files[name.substr(9, name.size() - 15)] = p;
        }
      }
    }
    for (const auto& [sys, path] : c.slices) {
      require_file(path, "slice");
      LabelSlice s = read_slice(path, sys);
      s.system = sys;
      add_slice(std::move(s), path);
    }
    if (slices.empty()) throw Error(ErrorCode::kConfigError, "no label slices given");

    std::vector<std::string> warnings;
    std::set<std::string> section_modes;
    for (const auto& s : slices) {
      if (auto it = s.meta.find("sections"); it != s.meta.end()) section_modes.insert(it->second);
    }
    if (section_modes.size() > 1) warnings.push_back("slices were labeled with different section scopes");

    const LabelMatrix matrix = assemble(slices);
    const std::vector<SystemId> systems = matrix.systems();
    if (systems.size() < 2) warnings.push_back("consensus from a single system equals that system");
    for (const auto& w : warnings) log << "warning: " << w << '\n';

    prepare_out(c.out);
    std::string sys_list;
    for (const auto& s : systems) sys_list += (sys_list.empty() ? "" : ",") + s;
    std::string sections_note;
    for (const auto& s : section_modes) sections_note += (sections_note.empty() ? "" : ",") + s;
    std::map<std::string, std::string> meta{{"vote", std::string(to_string(c.vote))},
                                            {"systems", sys_list}};
    if (!sections_note.empty()) meta["sections"] = sections_note;

    ordered_json summary;
    summary["version"] = std::string(kVersion);
    ordered_json cfg;
    cfg["inputs"] = inputs;
    ordered_json dirs = ordered_json::array();
    for (const auto& d : c.label_dirs) dirs.push_back(d.string());
    cfg["label_dirs"] = dirs;
    ordered_json refs = ordered_json::object();
    for (const auto& [sys, path] : c.references) refs[sys] = path.string();
    cfg["references"] = refs;
    cfg["vote"] = std::string(to_string(c.vote));
    cfg["pairwise_chi_square"] = c.pairwise_chi_square;
    cfg["sections"] = sections_note;
    summary["config"] = cfg;
    summary["kernels"] = std::string(kernels::active().name);
    summary["exams"] = matrix.exam_count();
    summary["systems"] = systems;

    // Consensus.
    const ConsensusMatrix consensus = build_pseudo_ground_truth(matrix, systems, c.vote);
    write_file(c.out / "consensus.csv", format_consensus(consensus));
    std::array<std::size_t, kStatusCount> by_status{};
    std::size_t ties = 0;
    for (const auto& cell : consensus.cells) {
      ++by_status[static_cast<std::size_t>(cell.consensus)];
      ties += cell.tie;
    }
    ordered_json cons;
    for (auto s : kAllStatuses) cons[std::string(to_string(s))] = by_status[static_cast<std::size_t>(s)];
    cons["ties"] = ties;
    summary["consensus"] = cons;

    // Agreement.
    ordered_json kappas = ordered_json::array();
    std::string kappa_csv = header_comment(meta) +
                            csv::format_row({"category", "condition", "kappa", "n_items", "n_raters",
                                             "observed", "expected", "degenerate"});
    if (systems.size() >= 2) {
      for (auto cond : {KappaCondition::kAll, KappaCondition::kExcludingAbsent}) {
        for (const auto& k : kappa_conditioned(matrix, systems, cond)) {
          kappa_csv += kappa_row("", k);
          kappas.push_back(kappa_json(k));
        }
      }
    }
    write_file(c.out / "kappa.csv", kappa_csv);
    summary["kappa"] = kappas;

    // Accuracy against the consensus.
    const LabelMatrix cons_matrix = consensus.as_matrix();
    const auto acc_all = assertion_accuracy(matrix, cons_matrix, systems, AccuracyDomain::kAllExams);
    const auto acc_present =
        assertion_accuracy(matrix, cons_matrix, systems, AccuracyDomain::kConsensusPresent);
    write_file(c.out / "accuracy_all.csv", accuracy_csv(acc_all, meta));
    write_file(c.out / "accuracy_present.csv", accuracy_csv(acc_present, meta));
    summary["accuracy"] = {accuracy_json(acc_all), accuracy_json(acc_present)};

    // Optional external references (for example synthetic ground truth).
    ordered_json ref_json = ordered_json::object();
    for (const auto& [ref_id, ref_path] : c.references) {
      require_file(ref_path, "reference slice");
      if (seen.count(ref_id)) {
        throw Error(ErrorCode::kConfigError, "reference id " + ref_id + " collides with a system");
      }
      LabelSlice ref = read_slice(ref_path, ref_id);
      ref.system = ref_id;
      std::vector<LabelSlice> pair_slices{slice_of(matrix, 0), ref};
      const LabelMatrix aligned = assemble(pair_slices);
      const auto ref_lane_index = aligned.require_system(ref_id);
      LabelMatrix ref_matrix(matrix.exam_ids(), {ref_id});
      for (std::size_t e = 0; e < matrix.exam_count(); ++e) {
        ref_matrix.set_row(0, e, aligned.row(ref_lane_index, *aligned.exam_index(matrix.exam_ids()[e])));
      }
      const auto r_all = assertion_accuracy(matrix, ref_matrix, systems, AccuracyDomain::kAllExams);
      const auto r_present =
          assertion_accuracy(matrix, ref_matrix, systems, AccuracyDomain::kConsensusPresent);
      auto ref_meta = meta;
      ref_meta["reference"] = ref_id;
      write_file(c.out / ("reference_" + ref_id + "_accuracy_all.csv"), accuracy_csv(r_all, ref_meta));
      write_file(c.out / ("reference_" + ref_id + "_accuracy_present.csv"),
                 accuracy_csv(r_present, ref_meta));

      std::string rk = header_comment(ref_meta) +
                       csv::format_row({"system", "category", "condition", "kappa", "n_items",
                                        "n_raters", "observed", "expected", "degenerate"});
      ordered_json rk_json = ordered_json::object();
      for (std::size_t s = 0; s < systems.size(); ++s) {
        std::vector<LabelSlice> two{slice_of(matrix, s), slice_of(ref_matrix, 0)};
        const LabelMatrix pair = assemble(two);
        const std::vector<SystemId> raters{systems[s], ref_id};
        ordered_json list = ordered_json::array();
        for (auto cond : {KappaCondition::kAll, KappaCondition::kExcludingAbsent}) {
          for (const auto& k : kappa_conditioned(pair, raters, cond)) {
            rk += kappa_row(systems[s], k);
            list.push_back(kappa_json(k));
          }
        }
        rk_json[systems[s]] = list;
      }
      write_file(c.out / ("reference_" + ref_id + "_kappa.csv"), rk);
      ref_json[ref_id] = {{"accuracy", {accuracy_json(r_all), accuracy_json(r_present)}},
                          {"kappa", rk_json}};
    }
    summary["references"] = ref_json;

    // Entity-level statistics from the mention files that came with the labels.
    ordered_json entity = ordered_json::object();
    if (!mention_files.empty()) {
      SystemRegistry registry = SystemRegistry::with_builtins();
      std::vector<EntityMention> mentions;
      std::vector<SystemId> mention_systems;
      for (const auto& [sys, path] : mention_files) {
        if (!registry.contains(sys)) {
          log << "warning: skipping mentions of unregistered system " << sys << '\n';
          continue;
        }
        auto in = ingest(registry, sys, path);
        if (!in.errors.empty()) {
          throw Error(ErrorCode::kConfigError, path.string() + " line " +
                                                   std::to_string(in.errors.front().line) + ": " +
                                                   in.errors.front().message);
        }
        mention_systems.push_back(sys);
        for (auto& m : in.mentions) mentions.push_back(std::move(m));
      }
      const auto& ids = matrix.exam_ids();
      const auto desc = entity_descriptives(mentions, ids, mention_systems);
      std::string d_csv = csv::format_row({"system", "section", "total", "mean_per_report", "sd", "unique"});
      ordered_json d_json = ordered_json::array();
      for (const auto& r : desc.rows) {
        d_csv += csv::format_row({r.system, r.section, std::to_string(r.total),
                                  fmt(r.mean_per_report), fmt(r.sd), std::to_string(r.unique)});
        d_json.push_back({{"system", r.system}, {"section", r.section}, {"total", r.total},
                          {"mean_per_report", number(r.mean_per_report)}, {"sd", number(r.sd)},
                          {"unique", r.unique}});
      }
      write_file(c.out / "descriptives.csv", d_csv);
      entity["descriptives"] = d_json;

      // Assertion distributions per section: systems x {Positive, Negative, Uncertain}.
      auto table_for = [&](SectionKind section, const std::vector<SystemId>& rows) {
        std::vector<std::vector<std::uint64_t>> t(rows.size(), std::vector<std::uint64_t>(3, 0));
        for (const auto& m : mentions) {
          if (m.section != section || !m.assertion) continue;
          auto it = std::find(rows.begin(), rows.end(), m.system);
          if (it == rows.end()) continue;
          ++t[static_cast<std::size_t>(it - rows.begin())][static_cast<std::size_t>(*m.assertion)];
        }
        return t;
      };
      std::string chi_csv =
          csv::format_row({"section", "systems", "statistic", "dof", "p_value", "adjusted_p",
                           "degenerate", "note"});
      ordered_json chi_json = ordered_json::array();
      for (auto section : {SectionKind::kFindings, SectionKind::kImpression}) {
        const std::string sname(to_string(section));
        auto omnibus = safe_chi_square(table_for(section, mention_systems));
        std::string joined;
        for (const auto& s : mention_systems) joined += (joined.empty() ? "" : ";") + s;
        chi_csv += csv::escape(sname) + "," + csv::escape(joined) + "," + test_cells(omnibus) + "\n";
        auto oj = test_json(omnibus);
        oj["section"] = sname;
        oj["systems"] = mention_systems;
        chi_json.push_back(oj);
        if (c.pairwise_chi_square && mention_systems.size() > 2) {
          std::vector<TestResult> pair_tests;
          std::vector<std::string> labels;
          for (std::size_t a = 0; a < mention_systems.size(); ++a) {
            for (std::size_t b = a + 1; b < mention_systems.size(); ++b) {
              pair_tests.push_back(safe_chi_square(
                  table_for(section, {mention_systems[a], mention_systems[b]})));
              labels.push_back(mention_systems[a] + ";" + mention_systems[b]);
            }
          }
          std::vector<double> ps;
          for (const auto& t : pair_tests) ps.push_back(t.p_value);
          const auto adj = bonferroni(ps, ps.size());
          for (std::size_t i = 0; i < pair_tests.size(); ++i) {
            pair_tests[i].adjusted_p = adj[i];
            chi_csv += csv::escape(sname) + "," + csv::escape(labels[i]) + "," +
                       test_cells(pair_tests[i]) + "\n";
            auto pj = test_json(pair_tests[i]);
            pj["section"] = sname;
            pj["systems"] = labels[i];
            chi_json.push_back(pj);
          }
        }
      }
      write_file(c.out / "chi_square.csv", chi_csv);
      entity["chi_square"] = chi_json;

      // Paired t-tests on per-report entity counts for every system pair.
      std::vector<std::vector<double>> counts;
      for (const auto& s : mention_systems) counts.push_back(per_report_counts(mentions, ids, s));
      std::vector<TestResult> tests;
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t a = 0; a < mention_systems.size(); ++a) {
        for (std::size_t b = a + 1; b < mention_systems.size(); ++b) {
          if (ids.size() < 2) continue;
          tests.push_back(paired_t_test(counts[a], counts[b]));
          pairs.emplace_back(a, b);
        }
      }
      std::vector<double> ps;
      for (const auto& t : tests) ps.push_back(t.p_value);
      const auto adj = bonferroni(ps, ps.size());
      std::string t_csv = csv::format_row({"system_a", "system_b", "mean_diff", "statistic", "dof",
                                           "p_value", "adjusted_p", "degenerate", "note"});
      ordered_json t_json = ordered_json::array();
      for (std::size_t i = 0; i < tests.size(); ++i) {
        tests[i].adjusted_p = adj[i];
        const auto [a, b] = pairs[i];
        const double diff = mean_sd(counts[a]).mean - mean_sd(counts[b]).mean;
        t_csv += csv::escape(mention_systems[a]) + "," + csv::escape(mention_systems[b]) + "," +
                 fmt(diff) + "," + test_cells(tests[i]) + "\n";
        auto tj = test_json(tests[i]);
        tj["system_a"] = mention_systems[a];
        tj["system_b"] = mention_systems[b];
        tj["mean_diff"] = number(diff);
        t_json.push_back(tj);
      }
      write_file(c.out / "ttests.csv", t_csv);
      entity["ttests"] = t_json;
    } else {
      warnings.push_back("no mention files found; entity statistics skipped");
      log << "warning: " << warnings.back() << '\n';
    }
    summary["entities"] = entity;
    summary["warnings"] = warnings;
    write_file(c.out / "summary.json", summary.dump(2) + "\n");
    log << "evaluated " << matrix.exam_count() << " exams across " << systems.size()
        << " systems\n";
    return kExitOk;
  });
}

// ---------------------------------------------------------------- synth

int cmd_synth(const RunConfig& c, std::ostream& log) {
  return guarded(log, [&]() -> int {
    SynthProfile profile = SynthProfile::defaults();
    if (c.profile) {
      require_file(*c.profile, "profile");
      profile = SynthProfile::from_json(read_file(*c.profile));
    }
    if (c.hedging) profile.hedging = *c.hedging;
    if (c.negation) profile.negation = *c.negation;
    profile.validate();
    const SyntheticCorpus corpus = generate_synthetic(c.seed, c.n, profile);
    prepare_out(c.out);
    fs::create_directories(c.out / "reports");

    std::string manifest = csv::format_row({"exam_id", "age_months", "sex", "path"});
    for (const auto& r : corpus.reports) {
      const std::string rel = "reports/" + r.exam_id + ".txt";
      write_file(c.out / rel, r.raw_text);
      manifest += csv::format_row({r.exam_id,
                                   r.meta.age_months ? std::to_string(*r.meta.age_months) : "",
                                   std::string(to_string(r.meta.sex)), rel});
    }
    write_file(c.out / "manifest.csv", manifest);

    LabelSlice truth;
    truth.system = std::string(kTruthSystem);
    for (const auto& r : corpus.reports) truth.exam_ids.push_back(r.exam_id);
    truth.rows = corpus.truth;
    truth.meta = {{"seed", std::to_string(c.seed)},
                  {"n", std::to_string(c.n)},
                  {"hedging", format_exact(profile.hedging)},
                  {"negation", format_exact(profile.negation)}};
    write_slice(c.out / "ground_truth.csv", truth);
    log << "generated " << corpus.reports.size() << " reports\n";
    return kExitOk;
  });
}

}  // namespace cxrlabel

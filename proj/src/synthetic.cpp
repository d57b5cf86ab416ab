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

#include "cxrlabel/synthetic.hpp"

#include <cstdio>
#include <random>
#include <string>

#include "cxrlabel/error.hpp"
#include "json.hpp"

namespace cxrlabel {
namespace {

using Phrases = std::array<std::string_view, 2>;

constexpr std::array<Phrases, kDiseaseCount> kPhrases = {{
    {"widened mediastinum", "enlarged cardiomediastinal silhouette"},
    {"cardiomegaly", "enlarged heart"},
    {"airspace opacity", "patchy opacities"},
    {"pulmonary nodule", "lung mass"},
    {"pulmonary edema", "interstitial edema"},
    {"consolidation", "right lower lobe consolidation"},
    {"pneumonia", "left lower lobe pneumonia"},
    {"atelectasis", "subsegmental atelectasis"},
    {"pneumothorax", "small apical pneumothorax"},
    {"pleural effusion", "small left pleural effusion"},
    {"pleural thickening", "apical pleural scarring"},
    {"rib fracture", "healing clavicle fracture"},
}};

constexpr std::array<std::string_view, 3> kNoFindings = {
    "No acute cardiopulmonary abnormality.",
    "Normal chest radiograph.",
    "No acute cardiopulmonary process.",
};

// "{}" is replaced by the phrase; "{^}" by the phrase with a capital letter.
constexpr std::array<std::string_view, 4> kPositive = {
    "{^}.", "There is {}.", "Stable {}.", "Interval development of {}."};
constexpr std::array<std::string_view, 5> kNegative = {
    "No {}.", "No evidence of {}.", "Negative for {}.", "There is no {}.",
    "{^} is not seen."};
constexpr std::array<std::string_view, 6> kHedged = {
    "Possible {}.",        "Suspected {}.",      "Cannot exclude {}.",
    "Findings may represent {}.", "Concerning for {}.", "Questionable {}."};

constexpr std::array<std::string_view, 5> kHistory = {
    "Cough and fever.", "Shortness of breath.", "Evaluate for pneumonia.",
    "Chest pain.",      "Follow-up."};

constexpr std::array<double, kDiseaseCount> kDefaultPrevalence = {
    0.03, 0.06, 0.20, 0.04, 0.06, 0.08, 0.18, 0.15, 0.04, 0.08, 0.03, 0.03};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // 53 random mantissa bits in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(engine_() % n);
  }

 private:
  std::mt19937_64 engine_;
};

std::string render(std::string_view tmpl, std::string_view phrase) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl.compare(i, 3, "{^}") == 0) {
      std::string cap(phrase);
      if (!cap.empty() && cap[0] >= 'a' && cap[0] <= 'z') cap[0] -= 'a' - 'A';
      out += cap;
      i += 2;
    } else if (tmpl.compare(i, 2, "{}") == 0) {
      out += phrase;
      i += 1;
    } else {
      out.push_back(tmpl[i]);
    }
  }
  return out;
}

template <std::size_t N>
std::string_view pick(Sampler& s, const std::array<std::string_view, N>& a) {
  return a[s.index(N)];
}

std::string sentence(Sampler& s, AssertionStatus status,
                     std::string_view phrase) {
  switch (status) {
    case AssertionStatus::kPositive:
      return render(pick(s, kPositive), phrase);
    case AssertionStatus::kNegative:
      return render(pick(s, kNegative), phrase);
    default:
      return render(pick(s, kHedged), phrase);
  }
}

void check_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kConfigError,
                what + " must lie in [0,1], got " + std::to_string(p));
  }
}

}  // namespace

SynthProfile SynthProfile::defaults() {
  SynthProfile p;
  p.prevalence = kDefaultPrevalence;
  return p;
}

SynthProfile SynthProfile::uniform(double prevalence, double hedging,
                                   double negation) {
  SynthProfile p;
  p.prevalence.fill(prevalence);
  p.hedging = hedging;
  p.negation = negation;
  return p;
}

SynthProfile SynthProfile::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError,
                std::string("profile is not valid JSON: ") + e.what());
  }
  SynthProfile p = defaults();
  try {
    if (doc.contains("hedging")) p.hedging = doc.at("hedging").get<double>();
    if (doc.contains("negation")) p.negation = doc.at("negation").get<double>();
    if (doc.contains("prevalence")) {
      for (const auto& [name, value] : doc.at("prevalence").items()) {
        auto cat = parse_category(name);
        if (!cat || *cat == DiseaseCategory::kNoFindings) {
          throw Error(ErrorCode::kConfigError,
                      "profile names unknown disease '" + name + "'");
        }
        p.prevalence[index_of(*cat)] = value.get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError,
                std::string("malformed profile: ") + e.what());
  }
  p.validate();
  return p;
}

void SynthProfile::validate() const {
  for (std::size_t d = 0; d < kDiseaseCount; ++d) {
    check_probability(prevalence[d], "prevalence of " +
                                         std::string(to_string(category_at(d))));
  }
  check_probability(hedging, "hedging");
  check_probability(negation, "negation");
}

std::span<const std::string_view> synthetic_phrases(DiseaseCategory category) {
  return kPhrases.at(index_of(category));
}

std::span<const std::string_view> no_findings_sentences() {
  return kNoFindings;
}

SyntheticCorpus generate_synthetic(std::uint64_t seed, std::size_t n,
                                   const SynthProfile& profile) {
  if (n == 0) {
    throw Error(ErrorCode::kConfigError, "synthetic corpus size must be > 0");
  }
  profile.validate();

  Sampler s(seed);
  SyntheticCorpus out;
  out.reports.reserve(n);
  out.truth.reserve(n);
  int width = 6;
  for (std::size_t v = n; v >= 1000000; v /= 10) ++width;

  for (std::size_t i = 0; i < n; ++i) {
    StatusVector truth = all_absent();
    bool any_finding = false;
    for (std::size_t d = 0; d < kDiseaseCount; ++d) {
      // Both draws are always taken so one probability never shifts the
      // random stream seen by other diseases.
      const double present = s.uniform();
      const double modifier = s.uniform();
      if (present < profile.prevalence[d]) {
        truth[d] = modifier < profile.hedging ? AssertionStatus::kUncertain
                                              : AssertionStatus::kPositive;
        any_finding = true;
      } else if (modifier < profile.negation) {
        truth[d] = AssertionStatus::kNegative;
      }
    }
    truth[index_of(DiseaseCategory::kNoFindings)] =
        any_finding ? AssertionStatus::kAbsent : AssertionStatus::kPositive;

    std::vector<std::string> impression;
    std::vector<std::string> findings;
    if (!any_finding) impression.emplace_back(pick(s, kNoFindings));
    for (std::size_t d = 0; d < kDiseaseCount; ++d) {
      if (truth[d] == AssertionStatus::kAbsent) continue;
      const auto phrase = kPhrases[d][s.index(2)];
      impression.push_back(sentence(s, truth[d], phrase));
      findings.push_back(sentence(s, truth[d], phrase));
    }

    std::string text = "CLINICAL HISTORY: ";
    text += pick(s, kHistory);
    text += "\nCOMPARISON: None.\nFINDINGS: Frontal and lateral views of the chest.";
    if (findings.empty()) text += " The lungs are clear.";
    for (const auto& f : findings) text += " " + f;
    text += "\nIMPRESSION:";
    const bool numbered = impression.size() > 1 && s.uniform() < 0.3;
    for (std::size_t k = 0; k < impression.size(); ++k) {
      text += numbered ? "\n" + std::to_string(k + 1) + ". " : " ";
      text += impression[k];
    }
    text += "\n";

    std::string id = std::to_string(i + 1);
    id = "SYN" + std::string(static_cast<std::size_t>(width) - std::min<std::size_t>(id.size(), width), '0') + id;
    ReportMeta meta;
    meta.age_months = static_cast<std::uint32_t>(s.index(18 * 12 + 1));
    const double sex = s.uniform();
    meta.sex = sex < 0.49 ? Sex::kMale : (sex < 0.995 ? Sex::kFemale : Sex::kUnknown);
    out.reports.push_back(parse_report(id, meta, std::move(text)));
    out.truth.push_back(truth);
  }
  return out;
}

}  // namespace cxrlabel

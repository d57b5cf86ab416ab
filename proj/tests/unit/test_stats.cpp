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

#include "doctest.h"

#include <cmath>
#include <random>

#include "cxrlabel/consensus.hpp"
#include <functional>

#include "cxrlabel/error.hpp"
#include "cxrlabel/special_functions.hpp"
#include "cxrlabel/stats.hpp"
#include "support/oracles.hpp"

using namespace cxrlabel;

namespace {

using C = DiseaseCategory;
constexpr auto P = AssertionStatus::kPositive;
constexpr auto N = AssertionStatus::kNegative;
constexpr auto U = AssertionStatus::kUncertain;
constexpr auto A = AssertionStatus::kAbsent;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kIoError;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("kappa: perfect agreement, single category, random tables") {
    const std::vector<std::uint8_t> perfect{0, 0, 0, 1, 1, 1, 2, 2, 2};
    auto r = fleiss_kappa(perfect, 3, 3);
    REQUIRE(r.kappa.has_value());
    CHECK(*r.kappa == doctest::Approx(1.0));

    const std::vector<std::uint8_t> single(12, 3);
    r = fleiss_kappa(single, 4, 3);
    CHECK_FALSE(r.kappa.has_value());
    CHECK(r.degenerate);

    std::mt19937 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t items = 1 + rng() % 20, raters = 2 + rng() % 6;
      std::vector<std::uint8_t> flat(items * raters);
      std::vector<std::vector<int>> table(items, std::vector<int>(raters));
      for (std::size_t i = 0; i < items; ++i) {
        for (std::size_t j = 0; j < raters; ++j) {
          table[i][j] = static_cast<int>(rng() % 4);
          flat[i * raters + j] = static_cast<std::uint8_t>(table[i][j]);
        }
      }
      const auto want = oracle::fleiss_kappa(table, 4);
      const auto got = fleiss_kappa(flat, items, raters);
      REQUIRE(want.has_value() == got.kappa.has_value());
      if (want) CHECK(std::abs(*want - *got.kappa) <= 1e-12);
    }
  }

  TEST_CASE("kappa input checks") {
    std::vector<StatusCounts> ragged{{2, 0, 0, 0}, {1, 1, 1, 0}};
    CHECK(code_of([&] { fleiss_kappa(ragged); }) == ErrorCode::kArityError);
    std::vector<StatusCounts> one_rater{{1, 0, 0, 0}};
    CHECK(code_of([&] { fleiss_kappa(one_rater); }) == ErrorCode::kArityError);
    std::vector<StatusCounts> none;
    CHECK(fleiss_kappa(none).degenerate);
  }

  TEST_CASE("kappa conditioned on present labels") {
    // Two raters over three exams; exam 2 is Absent for both.
    LabelMatrix m({"a", "b", "c"}, {"X", "Y"});
    m.set(0, C::kEdema, 0, P);
    m.set(1, C::kEdema, 0, P);
    m.set(0, C::kEdema, 1, N);
    m.set(1, C::kEdema, 1, U);
    const std::vector<SystemId> systems{"X", "Y"};
    const auto all = kappa_conditioned(m, systems, KappaCondition::kAll);
    const auto ex = kappa_conditioned(m, systems, KappaCondition::kExcludingAbsent);
    REQUIRE(all.size() == kCategoryCount);
    const auto& ka = all[index_of(C::kEdema)];
    const auto& ke = ex[index_of(C::kEdema)];
    CHECK(ka.n_items == 3);
    CHECK(ke.n_items == 2);
    const auto oa = oracle::fleiss_kappa({{0, 0}, {1, 2}, {3, 3}}, 4);
    const auto oe = oracle::fleiss_kappa({{0, 0}, {1, 2}}, 4);
    CHECK(*ka.kappa == doctest::Approx(*oa).epsilon(1e-12));
    CHECK(*ke.kappa == doctest::Approx(*oe).epsilon(1e-12));
    // Every rater Absent everywhere: excluded entirely, so undefined.
    CHECK_FALSE(ex[index_of(C::kFracture)].kappa.has_value());
    const std::vector<SystemId> lone{"X"};
    CHECK(code_of([&] { kappa_conditioned(m, lone, KappaCondition::kAll); }) ==
          ErrorCode::kArityError);
  }

  TEST_CASE("special functions against known values") {
    CHECK(regularized_gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(regularized_gamma_q(3.0, 0.0) == 1.0);
    CHECK(std::isnan(regularized_gamma_p(-1.0, 1.0)));
    CHECK(regularized_beta(2.0, 3.0, 0.4) == doctest::Approx(0.5248).epsilon(1e-12));
    CHECK(chi_square_sf(0.0, 2.0) == 1.0);
    CHECK(chi_square_sf(2.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
    CHECK(student_t_two_sided(0.0, 5.0) == doctest::Approx(1.0));
    // dof 1 is Cauchy: P(|T| >= 1) = 1/2.
    CHECK(student_t_two_sided(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
  }

  TEST_CASE("tails against numerical integration") {
    for (double dof : {1.0, 2.0, 5.0, 12.0}) {
      for (double x : {0.5, 3.841, 9.0}) {
        CAPTURE(dof);
        CAPTURE(x);
        CHECK(chi_square_sf(x, dof) == doctest::Approx(oracle::chi_square_sf(x, dof)).epsilon(1e-7));
        CHECK(student_t_two_sided(x, dof) ==
              doctest::Approx(oracle::student_t_two_sided(x, dof)).epsilon(1e-7));
      }
    }
  }

  TEST_CASE("chi-square independence") {
    auto r = chi_square_independence({{10, 20}, {20, 10}});
    CHECK(r.statistic == doctest::Approx(20.0 / 3.0).epsilon(1e-12));
    CHECK(r.dof == 1.0);
    CHECK(r.p_value == doctest::Approx(0.0098).epsilon(1e-2));
    r = chi_square_independence({{5, 0, 5}, {5, 0, 5}});
    CHECK(r.dof == 1.0);
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK_FALSE(r.note.empty());
    r = chi_square_independence({{5, 0}, {7, 0}});
    CHECK(r.degenerate);
    CHECK(r.p_value == 1.0);
    CHECK(code_of([] { chi_square_independence({{0, 0}, {0, 0}}); }) ==
          ErrorCode::kDegenerateInput);
    CHECK(code_of([] { chi_square_independence({{1, 2}, {3}}); }) == ErrorCode::kArityError);
  }

  TEST_CASE("paired t") {
    const std::vector<double> a{2, 3, 5}, b{1, 2, 3};
    auto r = paired_t_test(a, b);
    CHECK(r.statistic == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.dof == 2.0);
    CHECK(r.p_value == doctest::Approx(0.0572).epsilon(1e-2));
    r = paired_t_test(a, a);
    CHECK(r.degenerate);
    CHECK(r.p_value == 1.0);
    const std::vector<double> c{2, 3, 4};
    r = paired_t_test(c, b);
    CHECK(r.degenerate);
    CHECK(std::isinf(r.statistic));
    CHECK(r.p_value == 0.0);
    const std::vector<double> one{1};
    CHECK(code_of([&] { paired_t_test(one, one); }) == ErrorCode::kArityError);
    CHECK(code_of([&] { paired_t_test(a, one); }) == ErrorCode::kArityError);
  }

  TEST_CASE("bonferroni") {
    const std::vector<double> p{0.01, 0.2, 0.5, 1.0, 0.0};
    CHECK(bonferroni(p, 5) == std::vector<double>{0.05, 1.0, 1.0, 1.0, 0.0});
    CHECK(bonferroni(p, 10)[0] == 0.1);
    CHECK(code_of([&] { bonferroni(p, 4); }) == ErrorCode::kArityError);
    const std::vector<double> bad{1.5};
    CHECK(code_of([&] { bonferroni(bad, 1); }) == ErrorCode::kRangeError);
  }

  TEST_CASE("mean and population sd") {
    const std::vector<double> v{2, 4, NAN};
    const auto m = mean_sd(v);
    CHECK(m.n == 2);
    CHECK(m.mean == 3.0);
    CHECK(m.sd == 1.0);
    CHECK(std::isnan(mean_sd(std::vector<double>{}).mean));
  }

  TEST_CASE("accuracy against consensus in both domains") {
    LabelMatrix m({"a", "b", "c", "d"}, {"X", "Y", "Z"});
    // Edema: Y alone disagrees, on exam a.
    for (std::size_t s = 0; s < 3; ++s) {
      m.set(s, C::kEdema, 1, N);
    }
    m.set(0, C::kEdema, 0, P);
    m.set(1, C::kEdema, 0, U);
    m.set(2, C::kEdema, 0, P);
    const std::vector<SystemId> systems{"X", "Y", "Z"};
    const auto cons = build_pseudo_ground_truth(m, systems).as_matrix();
    const auto all = assertion_accuracy(m, cons, systems, AccuracyDomain::kAllExams);
    const auto present = assertion_accuracy(m, cons, systems, AccuracyDomain::kConsensusPresent);
    const auto e = index_of(C::kEdema);
    CHECK(all.cells[1][e].matches == 3);
    CHECK(all.cells[1][e].counted == 4);
    CHECK(present.cells[1][e].matches == 1);
    CHECK(present.cells[1][e].counted == 2);
    CHECK(present.cells[0][e].accuracy() == 1.0);
    CHECK(std::isnan(present.cells[0][index_of(C::kFracture)].accuracy()));
    CHECK(all.by_category[e].mean == doctest::Approx((1.0 + 0.75 + 1.0) / 3.0));
    CHECK(present.by_system[1].n == 1);  // only Edema has a present consensus

    LabelMatrix wrong({"a"}, {"CONSENSUS"});
    CHECK(code_of([&] { assertion_accuracy(m, wrong, systems, AccuracyDomain::kAllExams); }) ==
          ErrorCode::kPipelineOrderError);
  }
}

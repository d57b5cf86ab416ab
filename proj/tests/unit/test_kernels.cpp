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

#include <cstdlib>
#include <random>
#include <vector>

#include "cxrlabel/kernels.hpp"

using namespace cxrlabel;

namespace {

std::vector<std::uint8_t> random_lane(std::mt19937& rng, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (auto& x : v) x = static_cast<std::uint8_t>(rng() % 4);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar kernels on a small hand case") {
    const auto& k = kernels::scalar();
    const std::uint8_t a[] = {0, 1, 2, 3, 3};
    const std::uint8_t b[] = {0, 2, 2, 3, 1};
    CHECK(k.count_equal(a, b, 5) == 3);
    std::size_t matches = 0, counted = 0;
    k.count_equal_where_ref_not(a, b, 5, 3, &matches, &counted);
    CHECK(counted == 4);
    CHECK(matches == 2);
    std::uint8_t acc[5] = {0, 0, 0, 0, 255};
    k.accumulate_indicator(a, 5, 3, acc);
    CHECK(acc[3] == 1);
    CHECK(acc[4] == 0);
    std::uint8_t mask[5] = {1, 1, 1, 1, 0};
    k.and_equal_mask(mask, b, 5, 2);
    CHECK(std::vector<std::uint8_t>(mask, mask + 5) == std::vector<std::uint8_t>{0, 1, 1, 0, 0});
  }

  TEST_CASE("vector kernels equal scalar kernels") {
    const auto* v = kernels::avx2();
    if (v == nullptr) {
      MESSAGE("AVX2 unavailable; equivalence not exercised");
      return;
    }
    const auto& s = kernels::scalar();
    std::mt19937 rng(21);
    for (std::size_t n : {0, 1, 7, 31, 32, 33, 63, 64, 65, 100, 257, 1000, 4099}) {
      for (int rep = 0; rep < 5; ++rep) {
        CAPTURE(n);
        const auto a = random_lane(rng, n);
        auto b = random_lane(rng, n);
        CHECK(v->count_equal(a.data(), b.data(), n) == s.count_equal(a.data(), b.data(), n));
        for (std::uint8_t skip = 0; skip < 4; ++skip) {
          std::size_t m1 = 0, c1 = 0, m2 = 0, c2 = 0;
          v->count_equal_where_ref_not(a.data(), b.data(), n, skip, &m1, &c1);
          s.count_equal_where_ref_not(a.data(), b.data(), n, skip, &m2, &c2);
          CHECK(m1 == m2);
          CHECK(c1 == c2);

          std::vector<std::uint8_t> acc1(n), acc2(n);
          for (std::size_t i = 0; i < n; ++i) acc1[i] = acc2[i] = static_cast<std::uint8_t>(rng());
          v->accumulate_indicator(a.data(), n, skip, acc1.data());
          s.accumulate_indicator(a.data(), n, skip, acc2.data());
          CHECK(acc1 == acc2);

          std::vector<std::uint8_t> mask1(n), mask2(n);
          for (std::size_t i = 0; i < n; ++i) mask1[i] = mask2[i] = rng() & 1;
          v->and_equal_mask(mask1.data(), b.data(), n, skip);
          s.and_equal_mask(mask2.data(), b.data(), n, skip);
          CHECK(mask1 == mask2);
        }
      }
    }
  }

  TEST_CASE("active table honours the override") {
    const char* env = std::getenv("CXRLABEL_KERNELS");
    if (env != nullptr && std::string(env) == "scalar") {
      CHECK(kernels::active().name == kernels::scalar().name);
    } else if (kernels::avx2() != nullptr) {
      CHECK(kernels::active().name == kernels::avx2()->name);
    }
  }
}

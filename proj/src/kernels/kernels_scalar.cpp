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

#include "kernels_internal.hpp"

namespace cxrlabel::kernels {
namespace {

std::size_t count_equal(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) k += a[i] == b[i];
  return k;
}

void count_equal_where_ref_not(const std::uint8_t* a, const std::uint8_t* ref,
                               std::size_t n, std::uint8_t skip,
                               std::size_t* matches, std::size_t* counted) {
  std::size_t m = 0, c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ref[i] == skip) continue;
    ++c;
    m += a[i] == ref[i];
  }
  *matches = m;
  *counted = c;
}

void accumulate_indicator(const std::uint8_t* lane, std::size_t n, std::uint8_t value,
                          std::uint8_t* acc) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = static_cast<std::uint8_t>(acc[i] + (lane[i] == value));
}

void and_equal_mask(std::uint8_t* mask, const std::uint8_t* lane, std::size_t n,
                    std::uint8_t value) {
  for (std::size_t i = 0; i < n; ++i) mask[i] &= static_cast<std::uint8_t>(lane[i] == value);
}

}  // namespace

const Table kScalarTable = {"scalar", count_equal, count_equal_where_ref_not,
                            accumulate_indicator, and_equal_mask};

}  // namespace cxrlabel::kernels

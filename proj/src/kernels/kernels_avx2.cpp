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

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace cxrlabel::kernels {
namespace {

inline __m256i load(const std::uint8_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline std::size_t popcount32(unsigned v) {
  return static_cast<std::size_t>(__builtin_popcount(v));
}

std::size_t count_equal(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::size_t k = 0, i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i eq = _mm256_cmpeq_epi8(load(a + i), load(b + i));
    k += popcount32(static_cast<unsigned>(_mm256_movemask_epi8(eq)));
  }
  for (; i < n; ++i) k += a[i] == b[i];
  return k;
}

void count_equal_where_ref_not(const std::uint8_t* a, const std::uint8_t* ref,
                               std::size_t n, std::uint8_t skip,
                               std::size_t* matches, std::size_t* counted) {
  const __m256i vskip = _mm256_set1_epi8(static_cast<char>(skip));
  std::size_t m = 0, c = 0, i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i r = load(ref + i);
    const unsigned skipped =
        static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(r, vskip)));
    const unsigned eq =
        static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(load(a + i), r)));
    c += 32 - popcount32(skipped);
    m += popcount32(eq & ~skipped);
  }
  for (; i < n; ++i) {
    if (ref[i] == skip) continue;
    ++c;
    m += a[i] == ref[i];
  }
  *matches = m;
  *counted = c;
}

void accumulate_indicator(const std::uint8_t* lane, std::size_t n, std::uint8_t value,
                          std::uint8_t* acc) {
  const __m256i v = _mm256_set1_epi8(static_cast<char>(value));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    // cmpeq yields 0xFF (-1) per hit; subtracting adds one.
    const __m256i eq = _mm256_cmpeq_epi8(load(lane + i), v);
    const __m256i sum = _mm256_sub_epi8(load(acc + i), eq);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), sum);
  }
  for (; i < n; ++i) acc[i] = static_cast<std::uint8_t>(acc[i] + (lane[i] == value));
}

void and_equal_mask(std::uint8_t* mask, const std::uint8_t* lane, std::size_t n,
                    std::uint8_t value) {
  const __m256i v = _mm256_set1_epi8(static_cast<char>(value));
  const __m256i one = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i bit = _mm256_and_si256(_mm256_cmpeq_epi8(load(lane + i), v), one);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(mask + i),
                        _mm256_and_si256(load(mask + i), bit));
  }
  for (; i < n; ++i) mask[i] &= static_cast<std::uint8_t>(lane[i] == value);
}

}  // namespace

const Table kAvx2Table = {"avx2", count_equal, count_equal_where_ref_not,
                          accumulate_indicator, and_equal_mask};

}  // namespace cxrlabel::kernels

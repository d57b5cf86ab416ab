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

#ifndef CXRLABEL_KERNELS_HPP_
#define CXRLABEL_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

// Byte-lane kernels over status lanes of a LabelMatrix. Each has a portable
// scalar version and, on x86-64, an AVX2 version chosen at runtime.
namespace cxrlabel::kernels {

struct Table {
  std::string_view name;
  // Number of i with a[i] == b[i].
  std::size_t (*count_equal)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
  // Over i with ref[i] != skip: number of such i, and how many have a[i] == ref[i].
  void (*count_equal_where_ref_not)(const std::uint8_t* a, const std::uint8_t* ref,
                                    std::size_t n, std::uint8_t skip,
                                    std::size_t* matches, std::size_t* counted);
  // acc[i] += (lane[i] == value); wraps modulo 256.
  void (*accumulate_indicator)(const std::uint8_t* lane, std::size_t n,
                               std::uint8_t value, std::uint8_t* acc);
  // mask[i] &= (lane[i] == value) ? 1 : 0; mask holds 0 or 1.
  void (*and_equal_mask)(std::uint8_t* mask, const std::uint8_t* lane, std::size_t n,
                         std::uint8_t value);
};

const Table& scalar();
// nullptr when not compiled in or the CPU lacks AVX2.
const Table* avx2();
// AVX2 when available, unless CXRLABEL_KERNELS=scalar is set in the
// environment.
const Table& active();

}  // namespace cxrlabel::kernels

#endif  // CXRLABEL_KERNELS_HPP_

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

#ifndef CXRLABEL_KERNELS_INTERNAL_HPP_
#define CXRLABEL_KERNELS_INTERNAL_HPP_

#include "cxrlabel/kernels.hpp"

namespace cxrlabel::kernels {

extern const Table kScalarTable;
#ifdef CXRLABEL_HAVE_AVX2
extern const Table kAvx2Table;
#endif

}  // namespace cxrlabel::kernels

#endif  // CXRLABEL_KERNELS_INTERNAL_HPP_

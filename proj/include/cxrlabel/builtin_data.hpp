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

#ifndef CXRLABEL_BUILTIN_DATA_HPP_
#define CXRLABEL_BUILTIN_DATA_HPP_

#include <string_view>

namespace cxrlabel {

// Contents of the shipped data/ files, compiled in at build time.
std::string_view builtin_ruleset();
std::string_view builtin_lexicon();
std::string_view builtin_lemma_rules();

}  // namespace cxrlabel

#endif  // CXRLABEL_BUILTIN_DATA_HPP_

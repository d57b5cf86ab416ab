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

#include "cxrlabel/error.hpp"

namespace cxrlabel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyReport:
      return "EmptyReport";
    case ErrorCode::kConfigError:
      return "ConfigError";
    case ErrorCode::kRegistryError:
      return "RegistryError";
    case ErrorCode::kUnmappedAssertion:
      return "UnmappedAssertion";
    case ErrorCode::kPipelineOrderError:
      return "PipelineOrderError";
    case ErrorCode::kArityError:
      return "ArityError";
    case ErrorCode::kDegenerateInput:
      return "DegenerateInput";
    case ErrorCode::kRangeError:
      return "RangeError";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kDuplicateExam:
      return "DuplicateExam";
    case ErrorCode::kOrphanExam:
      return "OrphanExam";
    case ErrorCode::kCoverageMismatch:
      return "CoverageMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message) {}

UnmappedAssertion::UnmappedAssertion(std::string system, std::string raw)
    : Error(ErrorCode::kUnmappedAssertion,
            "system " + system + " has no mapping for assertion '" + raw + "'"),
      system_(std::move(system)),
      raw_(std::move(raw)) {}

}  // namespace cxrlabel

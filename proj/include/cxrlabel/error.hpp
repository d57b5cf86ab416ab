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

#ifndef CXRLABEL_ERROR_HPP_
#define CXRLABEL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cxrlabel {

enum class ErrorCode {
  kEmptyReport,
  kConfigError,
  kRegistryError,
  kUnmappedAssertion,
  kPipelineOrderError,
  kArityError,
  kDegenerateInput,
  kRangeError,
  kIoError,
  kDuplicateExam,
  kOrphanExam,
  kCoverageMismatch,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported as Error; code() tells them apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  // The message without the leading code name.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

// Thrown by standardization when a categorical value has no mapping.
class UnmappedAssertion : public Error {
 public:
  UnmappedAssertion(std::string system, std::string raw);

  const std::string& system() const { return system_; }
  const std::string& raw() const { return raw_; }

 private:
  std::string system_;
  std::string raw_;
};

}  // namespace cxrlabel

#endif  // CXRLABEL_ERROR_HPP_

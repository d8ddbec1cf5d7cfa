// Copyright 2026 The kgcr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KGCR_UTIL_ERROR_H_
#define KGCR_UTIL_ERROR_H_

#include <stdexcept>
#include <string>

namespace kgcr {

// Error categories surfaced by the core library. The C API maps these 1:1 to
// kgcr_status values, so the numeric order is part of the ABI.
enum class ErrorCode {
  kInvalidArgument = 1,
  kIo = 2,
  kParse = 3,
  kNotFound = 4,
  kEmptyRelation = 5,
  kOutOfRange = 6,
  kContractViolation = 7,
  kSizeLimit = 8,
  kUndefined = 9,
  kInternal = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace kgcr

#endif  // KGCR_UTIL_ERROR_H_

// Copyright 2026 The AML Authors.
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

#ifndef AML_ERROR_H_
#define AML_ERROR_H_

#include <stdexcept>
#include <string>

namespace aml {

enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kIo,
  kBadMagic,
  kUnsupportedVersion,
  kTruncated,
  kNonFinite,
  kBadFormat,
  kNotBinary,
};

const char* error_code_name(ErrorCode code);

// Every failure raised by the library carries a code so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}
// Literal messages: nothing is allocated unless the check fails.
inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) fail(code, message);
}

}  // namespace aml

#endif  // AML_ERROR_H_

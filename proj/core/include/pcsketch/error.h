// Copyright 2026 The pcsketch Authors
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

#ifndef PCSKETCH_ERROR_H_
#define PCSKETCH_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pcsketch {

enum class ErrorCode {
  kInvalidParameter,
  kDimensionMismatch,
  kIndexOutOfRange,
  kIncompatibleSketch,
  kWrongVariant,
  kCollision,
  kParse,
  kIo,
  kFormat,
};

// Stable lower-case name used in machine-parsable error lines.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a collision-free sensitivity premise fails; carries the first
// offending cell.
class CollisionError : public Error {
 public:
  CollisionError(std::uint32_t row, std::uint32_t bucket,
                 const std::string& message)
      : Error(ErrorCode::kCollision, message), row_(row), bucket_(bucket) {}

  std::uint32_t row() const noexcept { return row_; }
  std::uint32_t bucket() const noexcept { return bucket_; }

 private:
  std::uint32_t row_;
  std::uint32_t bucket_;
};

}  // namespace pcsketch

#endif  // PCSKETCH_ERROR_H_

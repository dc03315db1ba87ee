// Copyright 2026 The ppcsim Authors
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

#ifndef PPCSIM_CORE_ERROR_HPP_
#define PPCSIM_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppcsim {

// Numeric values are mirrored by ppc_status in the C header; keep in sync.
enum class ErrorCode {
  kInvalidArgument = 1,
  kNonSkewInput = 2,
  kNearSingularAttitude = 3,
  kNegativeTime = 4,
  kInfeasibleEnvelope = 5,
  kNonFiniteState = 6,
  kDegenerateThrust = 7,
  kYawAlignmentSingularity = 8,
  kInsufficientHistory = 9,
  kConfigInvalid = 10,
  kIo = 11,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when the plant or an observer produces NaN/inf. Carries the
// simulation time at which the failure was detected.
class NonFiniteStateError : public Error {
 public:
  NonFiniteStateError(double t, const std::string& what)
      : Error(ErrorCode::kNonFiniteState, what), time_(t) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace ppcsim

#endif  // PPCSIM_CORE_ERROR_HPP_

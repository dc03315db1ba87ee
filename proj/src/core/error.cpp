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

#include "error.hpp"

namespace ppcsim {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonSkewInput: return "NonSkewInput";
    case ErrorCode::kNearSingularAttitude: return "NearSingularAttitude";
    case ErrorCode::kNegativeTime: return "NegativeTime";
    case ErrorCode::kInfeasibleEnvelope: return "InfeasibleEnvelope";
    case ErrorCode::kNonFiniteState: return "NonFiniteState";
    case ErrorCode::kDegenerateThrust: return "DegenerateThrust";
    case ErrorCode::kYawAlignmentSingularity: return "YawAlignmentSingularity";
    case ErrorCode::kInsufficientHistory: return "InsufficientHistory";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace ppcsim

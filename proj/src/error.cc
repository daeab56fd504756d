/*
 * Copyright 2026 The frenet_avoid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "frenet_avoid/error.h"

namespace frenet_avoid {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kEmptyRegion:
      return "EmptyRegion";
    case ErrorCode::kNonPositiveDepth:
      return "NonPositiveDepth";
    case ErrorCode::kUnknownModel:
      return "UnknownModel";
    case ErrorCode::kDegenerateWaypoints:
      return "DegenerateWaypoints";
    case ErrorCode::kOutOfRange:
      return "OutOfRange";
    case ErrorCode::kProjectionAmbiguous:
      return "ProjectionAmbiguous";
    case ErrorCode::kFoldOver:
      return "FoldOver";
    case ErrorCode::kNonPositiveHorizon:
      return "NonPositiveHorizon";
    case ErrorCode::kNoFeasiblePath:
      return "NoFeasiblePath";
    case ErrorCode::kEmptyTrajectory:
      return "EmptyTrajectory";
    case ErrorCode::kCoincidentTarget:
      return "CoincidentTarget";
    case ErrorCode::kUnknownCase:
      return "UnknownCase";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace frenet_avoid

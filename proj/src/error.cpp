// Copyright 2026 The tactex Authors.
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

#include "tactex/error.hpp"

namespace tactex {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kZeroTriangles: return "zero_triangles";
    case ErrorCode::kNonFiniteVertex: return "non_finite_vertex";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kInvalidConfig: return "invalid_config";
    case ErrorCode::kNoFirstTouch: return "no_first_touch";
    case ErrorCode::kEpisodeDone: return "episode_done";
    case ErrorCode::kNoTouchPose: return "no_touch_pose";
    case ErrorCode::kShapeMismatch: return "shape_mismatch";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kReplayMismatch: return "replay_mismatch";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kContactLost: return "contact_lost";
  }
  return "unknown";
}

}  // namespace tactex

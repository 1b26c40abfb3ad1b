// Copyright 2026 The mapeval Authors.
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

#include "mapeval/error.hpp"

namespace mapeval {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::UnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::TruncatedBody: return "TruncatedBody";
    case ErrorCode::MalformedBody: return "MalformedBody";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::DuplicateTargetId: return "DuplicateTargetId";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::EmptyCrop: return "EmptyCrop";
    case ErrorCode::NoGroundFound: return "NoGroundFound";
    case ErrorCode::EmptyAfterRemoval: return "EmptyAfterRemoval";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateCluster: return "DegenerateCluster";
    case ErrorCode::NoConsensus: return "NoConsensus";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::NearParallel: return "NearParallel";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::SampleFailure: return "SampleFailure";
    case ErrorCode::TooFewPairs: return "TooFewPairs";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::TooFewTargets: return "TooFewTargets";
    case ErrorCode::IdMismatch: return "IdMismatch";
    case ErrorCode::OverlappingTargets: return "OverlappingTargets";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace mapeval

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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mapeval {

enum class ErrorCode {
  // pointcloud-io
  MalformedHeader,
  UnsupportedEncoding,
  TruncatedBody,
  MalformedBody,
  IoFailure,
  DuplicateTargetId,
  MalformedRow,
  EmptyFile,
  // cropping
  EmptyCrop,
  NoGroundFound,
  EmptyAfterRemoval,
  // target estimation
  TooFewPoints,
  DegenerateCluster,
  NoConsensus,
  DegeneratePlane,
  NearParallel,
  RetriesExhausted,
  SampleFailure,
  // registration / metrics
  TooFewPairs,
  DegenerateConfiguration,
  TooFewTargets,
  IdMismatch,
  // scene / config
  OverlappingTargets,
  InvalidConfig,
};

/// Stable name of an error code, e.g. "RetriesExhausted".
std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. `code()` identifies the
/// failure class; `what()` carries a human-readable diagnostic prefixed with
/// the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace mapeval

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

#include <cstdint>
#include <random>

namespace mapeval {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

/// Derives an independent child seed from (parent, stream). Used so that each
/// sample, retry and cluster gets its own reproducible stream regardless of
/// scheduling order.
constexpr Seed derive_seed(Seed parent, std::uint64_t stream) {
  // splitmix64 finalizer over a mix of both inputs.
  std::uint64_t z = parent + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace mapeval

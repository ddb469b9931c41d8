/*
 * Copyright 2026 The hrsim Authors.
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

#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hrsim {

// Virtual time is an integer count of microseconds since the start of a run.
using SimTime = std::chrono::microseconds;

using SiteId = std::uint32_t;
using RegionId = std::uint32_t;
using JobId = std::uint32_t;
using JobTypeId = std::uint32_t;
using Bytes = std::uint64_t;

// Bad input: unknown keys, violated configuration invariants, unknown ids.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal contract. Raised when a run can no longer be trusted.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline double to_seconds(SimTime t) {
  return static_cast<double>(t.count()) / 1e6;
}

// Rounds to the nearest microsecond.
inline SimTime from_seconds(double s) {
  return SimTime{static_cast<std::int64_t>(s * 1e6 + (s >= 0 ? 0.5 : -0.5))};
}

}  // namespace hrsim

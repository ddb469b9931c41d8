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

#include <cstdint>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "hrsim/types.hpp"

namespace hrsim {

enum class EventKind { JobSubmit, TransferComplete, JobStart, JobComplete };

inline std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::JobSubmit:
      return "JobSubmit";
    case EventKind::TransferComplete:
      return "TransferComplete";
    case EventKind::JobStart:
      return "JobStart";
    case EventKind::JobComplete:
      return "JobComplete";
  }
  return "?";
}

struct SimEvent {
  SimTime time{0};
  std::uint64_t seq = 0;
  EventKind kind = EventKind::JobSubmit;
  JobId job = 0;
  SiteId site = 0;
  // Index into the run's transfer log; meaningful for TransferComplete only.
  std::uint64_t transfer = 0;
};

// Min-queue on (time, seq). Owns the virtual clock, which advances on pop.
class EventQueue {
 public:
  // Assigns the next sequence number and returns it.
  std::uint64_t push(SimEvent ev) {
    if (ev.time < clock_) {
      throw InvariantViolation("event scheduled into the past: t=" +
                               std::to_string(ev.time.count()) +
                               "us, clock=" + std::to_string(clock_.count()) +
                               "us, kind=" + std::string(to_string(ev.kind)));
    }
    if (ev.time.count() < 0) {
      throw InvariantViolation("negative event time");
    }
    ev.seq = next_seq_++;
    heap_.push(ev);
    return ev.seq;
  }

  SimEvent pop() {
    if (heap_.empty()) throw InvariantViolation("pop from empty event queue");
    SimEvent ev = heap_.top();
    heap_.pop();
    clock_ = ev.time;
    return ev;
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  SimTime now() const { return clock_; }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
  SimTime clock_{0};
  std::uint64_t next_seq_ = 0;
};

// One processed event, rendered as `time_us<TAB>seq<TAB>kind<TAB>payload`.
struct TraceLine {
  SimTime time{0};
  std::uint64_t seq = 0;
  EventKind kind = EventKind::JobSubmit;
  std::string payload;

  std::string render() const {
    std::string out = std::to_string(time.count());
    out += '\t';
    out += std::to_string(seq);
    out += '\t';
    out += to_string(kind);
    out += '\t';
    out += payload;
    return out;
  }
};

}  // namespace hrsim

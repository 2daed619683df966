// Copyright 2026 The planrec Authors
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

#ifndef PLANREC_METRICS_HPP
#define PLANREC_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace planrec {

// Memory-event instrumentation. Inference code reports every
// construction and retrieval of a session-owned memory node (timepoints,
// actions, hypotheses, bindings, change entries, ...). Knowledge-base
// structures are shared across sessions and are deliberately not hooked.
//
// Lifespan analysis treats a node as "born" at its create event and
// "dead" after its last access event; the living curve counts, per tick,
// the nodes already born whose last access has not yet passed.

enum class NodeKind {
  timepoint,
  action,
  intention,
  hypothesis,
  binding,
  change_entry,
  store_entry,
  chain_link,
};

enum class EventKind { create, access };

struct MemoryEvent {
  std::uint64_t tick = 0;  // dense, strictly increasing event index
  EventKind kind = EventKind::create;
  std::uint64_t node = 0;
  NodeKind node_kind = NodeKind::timepoint;
};

const char* node_kind_name(NodeKind kind);

// Living-memory share cap used by the benchmark pass/fail column and the
// acceptance suite: peak living count over final total created.
inline constexpr double kTransientLivingRatioCap = 0.35;

/// Append-only event log for one inference session. All hooks are no-ops
/// when the recorder is disabled (the default), so sessions without one
/// pay only a null check.
class MetricsRecorder {
 public:
  MetricsRecorder() = default;

  /// Registers a new node and returns its id. Node 0 is never issued, so
  /// instrumented structures can use id 0 for "not tracked".
  std::uint64_t create(NodeKind kind);

  /// Records a retrieval of `node`. Ignores id 0.
  void access(std::uint64_t node, NodeKind kind);

  const std::vector<MemoryEvent>& events() const { return events_; }
  std::uint64_t total_created() const { return next_node_ - 1; }

 private:
  std::vector<MemoryEvent> events_;
  std::uint64_t next_tick_ = 0;
  std::uint64_t next_node_ = 1;
};

struct LifespanRecord {
  std::uint64_t node = 0;
  NodeKind kind = NodeKind::timepoint;
  std::uint64_t birth = 0;
  std::uint64_t death = 0;  // last access tick; equals birth if never accessed
};

struct CurvePoint {
  std::uint64_t tick = 0;
  std::uint64_t living = 0;
  std::uint64_t total = 0;
};

/// One record per node, ordered by node id. First event per node must be
/// its create.
std::vector<LifespanRecord> lifespans(const std::vector<MemoryEvent>& events);

/// Living/total counts for every tick from 0 to one past the last event,
/// so the final point always shows zero living nodes. Empty input gives
/// an empty curve.
std::vector<CurvePoint> living_curve(const std::vector<MemoryEvent>& events);

std::uint64_t peak_living(const std::vector<CurvePoint>& curve);

/// CSV writers. Deterministic row order (by tick / node id); header-only
/// files for empty inputs. Throw ValidationError when the path cannot be
/// opened.
void write_curve_csv(const std::vector<CurvePoint>& curve,
                     const std::string& path);
void write_lifespans_csv(const std::vector<LifespanRecord>& records,
                         const std::string& path);

}  // namespace planrec

#endif  // PLANREC_METRICS_HPP

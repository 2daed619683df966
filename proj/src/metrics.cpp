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

#include "planrec/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "planrec/errors.hpp"

namespace planrec {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::timepoint: return "timepoint";
    case NodeKind::action: return "action";
    case NodeKind::intention: return "intention";
    case NodeKind::hypothesis: return "hypothesis";
    case NodeKind::binding: return "binding";
    case NodeKind::change_entry: return "change-entry";
    case NodeKind::store_entry: return "store-entry";
    case NodeKind::chain_link: return "chain-link";
  }
  return "?";
}

std::uint64_t MetricsRecorder::create(NodeKind kind) {
  std::uint64_t id = next_node_++;
  events_.push_back({next_tick_++, EventKind::create, id, kind});
  return id;
}

void MetricsRecorder::access(std::uint64_t node, NodeKind kind) {
  if (node == 0) return;
  events_.push_back({next_tick_++, EventKind::access, node, kind});
}

std::vector<LifespanRecord> lifespans(const std::vector<MemoryEvent>& events) {
  std::map<std::uint64_t, LifespanRecord> by_node;
  for (const MemoryEvent& ev : events) {
    auto it = by_node.find(ev.node);
    if (it == by_node.end()) {
      by_node[ev.node] = {ev.node, ev.node_kind, ev.tick, ev.tick};
    } else {
      it->second.death = ev.tick;
    }
  }
  std::vector<LifespanRecord> out;
  out.reserve(by_node.size());
  for (auto& [id, rec] : by_node) out.push_back(rec);
  return out;
}

std::vector<CurvePoint> living_curve(const std::vector<MemoryEvent>& events) {
  if (events.empty()) return {};
  std::uint64_t horizon = events.back().tick + 1;

  // Per-tick deltas: +1 at birth, -1 one past death.
  std::vector<std::int64_t> delta(horizon + 2, 0);
  std::vector<std::int64_t> births(horizon + 2, 0);
  for (const LifespanRecord& rec : lifespans(events)) {
    delta[rec.birth] += 1;
    delta[rec.death + 1] -= 1;
    births[rec.birth] += 1;
  }

  std::vector<CurvePoint> curve;
  curve.reserve(horizon + 1);
  std::int64_t living = 0;
  std::uint64_t total = 0;
  for (std::uint64_t t = 0; t <= horizon; ++t) {
    living += delta[t];
    total += static_cast<std::uint64_t>(births[t]);
    curve.push_back({t, static_cast<std::uint64_t>(living), total});
  }
  return curve;
}

std::uint64_t peak_living(const std::vector<CurvePoint>& curve) {
  std::uint64_t peak = 0;
  for (const CurvePoint& p : curve) peak = std::max(peak, p.living);
  return peak;
}

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_curve_csv(const std::vector<CurvePoint>& curve,
                     const std::string& path) {
  std::ofstream out = open_csv(path);
  out << "tick,living,total\n";
  for (const CurvePoint& p : curve)
    out << p.tick << "," << p.living << "," << p.total << "\n";
}

void write_lifespans_csv(const std::vector<LifespanRecord>& records,
                         const std::string& path) {
  std::ofstream out = open_csv(path);
  out << "nodeId,kind,birth,death\n";
  for (const LifespanRecord& r : records)
    out << r.node << "," << node_kind_name(r.kind) << "," << r.birth << ","
        << r.death << "\n";
}

}  // namespace planrec

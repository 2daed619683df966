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

#include "planrec/timeline.hpp"

#include <algorithm>
#include <sstream>

#include "planrec/errors.hpp"

namespace planrec {

Timeline::Timeline(MetricsRecorder* metrics) : metrics_(metrics) {
  points_.push_back({});
  if (metrics_) points_.front().node = metrics_->create(NodeKind::timepoint);
}

Timepoint& Timeline::append(const ChangeRecord* change) {
  Timepoint& prev = points_.back();
  points_.push_back({});
  Timepoint& tp = points_.back();
  tp.index = prev.index + 1;
  tp.prev = &prev;
  tp.change = change;
  if (metrics_) tp.node = metrics_->create(NodeKind::timepoint);
  return tp;
}

void Timeline::add_hypothesis(Timepoint& tp, const Symbol& predicted_type,
                              Hypothesis* h) {
  std::uint64_t node = metrics_ ? metrics_->create(NodeKind::store_entry) : 0;
  tp.store[predicted_type].push_back({h, node});
}

std::vector<Hypothesis*> Timeline::hypotheses_for(Timepoint& tp,
                                                  const Symbol& action_type) {
  auto it = tp.store.find(action_type);
  if (it == tp.store.end()) return {};
  if (metrics_) metrics_->access(tp.node, NodeKind::timepoint);
  std::vector<Hypothesis*> snapshot;
  snapshot.reserve(it->second.size());
  for (const StoreEntry& entry : it->second) {
    if (metrics_) metrics_->access(entry.node, NodeKind::store_entry);
    snapshot.push_back(entry.hypothesis);
  }
  return snapshot;
}

namespace {

NodeKind instance_node_kind(const ActionInstance& instance) {
  return instance.kind == ActionInstance::Kind::primitive ? NodeKind::action
                                                          : NodeKind::intention;
}

// Walks both parsimony chains in lockstep until one reaches the initial
// timepoint. Returns negative when `a` gets there strictly first,
// positive when `b` does, zero on a tie.
int compare_paths_by_walk(const ActionInstance& a, const ActionInstance& b) {
  const Timepoint* at = a.start;
  const Timepoint* bt = b.start;
  for (;;) {
    bool a_done = at->is_initial();
    bool b_done = bt->is_initial();
    if (a_done || b_done) {
      if (a_done && b_done) return 0;
      return a_done ? -1 : 1;
    }
    if (!at->parsimony || !bt->parsimony)
      throw InferenceError("parsimony chain broken during path walk");
    at = at->parsimony->instance->start;
    bt = bt->parsimony->instance->start;
  }
}

}  // namespace

bool Timeline::update_parsimony(Timepoint& tp, const ActionInstance& candidate) {
  int start_distance = candidate.start->distance();
  if (start_distance < 0)
    throw InferenceError(
        "intention starts at a timepoint with no parsimony path (index " +
        std::to_string(candidate.start->index) + ")");
  int distance = 1 + start_distance;

  if (metrics_) {
    metrics_->access(candidate.node, instance_node_kind(candidate));
    metrics_->access(candidate.start->node, NodeKind::timepoint);
  }

  bool install;
  if (!tp.parsimony) {
    install = true;
  } else {
    install = distance < tp.parsimony->distance;
    if (metrics_)
      metrics_->access(tp.parsimony->instance->node,
                       instance_node_kind(*tp.parsimony->instance));
    if (cross_check_) {
      int walked = compare_paths_by_walk(candidate, *tp.parsimony->instance);
      bool walk_install = walked < 0;
      if (walk_install != install)
        throw InferenceError("parsimony distance disagrees with path walk at " +
                             std::to_string(tp.index));
    }
  }
  if (install) tp.parsimony = ParsimonyEntry{&candidate, distance};
  return install;
}

std::vector<const ActionInstance*> trace_instances(const Timepoint& final_tp,
                                                   MetricsRecorder* metrics) {
  std::vector<const ActionInstance*> out;
  const Timepoint* tp = &final_tp;
  while (!tp->is_initial()) {
    if (!tp->parsimony)
      throw InferenceError("no parsimony pointer at timepoint " +
                           std::to_string(tp->index) +
                           "; demonstration not fully processed");
    const ActionInstance* instance = tp->parsimony->instance;
    if (metrics) {
      metrics->access(tp->node, NodeKind::timepoint);
      metrics->access(instance->node, instance_node_kind(*instance));
    }
    out.push_back(instance);
    tp = instance->start;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Explanation trace(const Timepoint& final_tp, MetricsRecorder* metrics) {
  Explanation out;
  out.covered_actions = final_tp.index;
  for (const ActionInstance* instance : trace_instances(final_tp, metrics))
    out.intents.push_back({instance->type, instance->args,
                           instance->start->index, instance->end->index});
  return out;
}

std::string serialize_explanation(const Explanation& explanation) {
  std::ostringstream os;
  os << "(explanation";
  for (const CoverItem& intent : explanation.intents) {
    os << " (intent " << intent.type;
    for (const Symbol& arg : intent.args) os << ' ' << arg;
    os << " (span " << intent.start << ' ' << intent.end << "))";
  }
  os << ')';
  return os.str();
}

}  // namespace planrec

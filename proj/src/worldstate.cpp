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

#include "planrec/worldstate.hpp"

#include "planrec/errors.hpp"

namespace planrec {

WorldState::WorldState(const std::vector<EnvObject>& objects,
                       MetricsRecorder* metrics)
    : metrics_(metrics) {
  for (const EnvObject& obj : objects) {
    if (!initial_.emplace(obj.id, obj).second)
      throw ValidationError("duplicate object id: " + obj.id);
    if (metrics_)
      for (const auto& [prop, value] : obj.properties)
        initial_nodes_[{obj.id, prop}] =
            metrics_->create(NodeKind::change_entry);
  }
}

const ChangeRecord& WorldState::apply_changes(
    int time_index, const std::vector<ChangeTriple>& changes) {
  if (time_index <= last_time_)
    throw ValidationError("non-monotonic time index: " +
                          std::to_string(time_index));
  last_time_ = time_index;

  history_.push_back({time_index, {}});
  ChangeRecord& record = history_.back();
  for (const ChangeTriple& change : changes) {
    if (!initial_.count(change.object_id))
      throw ValidationError("change references unknown object: " +
                            change.object_id);
    ObjectDelta& delta = record.entries[change.object_id];
    delta.object_id = change.object_id;
    delta.time_index = time_index;
    if (!delta.changed.emplace(change.prop, change.value).second)
      throw ValidationError("property changed twice at one timepoint: " +
                            change.object_id + "." + change.prop);
    if (metrics_)
      delta.entry_nodes[change.prop] = metrics_->create(NodeKind::change_entry);
  }
  for (auto& [object_id, delta] : record.entries) {
    auto it = latest_by_object_.find(object_id);
    if (it != latest_by_object_.end()) {
      delta.prev_same_object = it->second;
      if (metrics_) delta.link_node = metrics_->create(NodeKind::chain_link);
      it->second = &delta;
    } else {
      latest_by_object_[object_id] = &delta;
    }
  }
  return record;
}

const ObjectDelta* WorldState::latest_delta(const Symbol& object_id) const {
  auto it = latest_by_object_.find(object_id);
  return it == latest_by_object_.end() ? nullptr : it->second;
}

std::optional<Symbol> WorldState::try_query(const Symbol& object_id,
                                            const Symbol& prop,
                                            int at_time) const {
  auto obj_it = initial_.find(object_id);
  if (obj_it == initial_.end()) return std::nullopt;

  // Walk this object's chain: most recent delta first, following the
  // dotted per-object links past anything newer than `at_time`.
  for (const ObjectDelta* delta = latest_delta(object_id); delta != nullptr;
       delta = delta->prev_same_object) {
    if (delta->time_index > at_time) {
      if (metrics_) metrics_->access(delta->link_node, NodeKind::chain_link);
      continue;
    }
    auto entry = delta->changed.find(prop);
    if (entry != delta->changed.end()) {
      if (metrics_) {
        auto node = delta->entry_nodes.find(prop);
        if (node != delta->entry_nodes.end())
          metrics_->access(node->second, NodeKind::change_entry);
      }
      return entry->second;
    }
    if (metrics_) metrics_->access(delta->link_node, NodeKind::chain_link);
  }

  auto init_entry = obj_it->second.properties.find(prop);
  if (init_entry == obj_it->second.properties.end()) return std::nullopt;
  if (metrics_) {
    auto node = initial_nodes_.find({object_id, prop});
    if (node != initial_nodes_.end())
      metrics_->access(node->second, NodeKind::change_entry);
  }
  return init_entry->second;
}

Symbol WorldState::query(const Symbol& object_id, const Symbol& prop,
                         int at_time) const {
  if (!initial_.count(object_id))
    throw ValidationError("unknown object: " + object_id);
  std::optional<Symbol> value = try_query(object_id, prop, at_time);
  if (!value)
    throw ValidationError("no value for " + object_id + "." + prop +
                          " at timepoint " + std::to_string(at_time));
  return *value;
}

}  // namespace planrec

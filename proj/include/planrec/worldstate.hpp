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

#ifndef PLANREC_WORLDSTATE_HPP
#define PLANREC_WORLDSTATE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planrec/kb.hpp"      // Symbol
#include "planrec/metrics.hpp"

namespace planrec {

// Point-in-time environment model. The initial environment is stored in
// full; every later timepoint stores only the properties that changed,
// and each object's deltas are chained in reverse chronological order so
// a query can walk straight to the most recent change of that object
// without touching unrelated timepoints.

struct EnvObject {
  Symbol id;
  std::map<Symbol, Symbol> properties;

  bool operator==(const EnvObject&) const = default;
};

struct ChangeTriple {
  Symbol object_id;
  Symbol prop;
  Symbol value;

  bool operator==(const ChangeTriple&) const = default;
};

struct ObjectDelta {
  Symbol object_id;
  int time_index = 0;
  std::map<Symbol, Symbol> changed;
  const ObjectDelta* prev_same_object = nullptr;

  // Instrumentation ids (0 when metrics are off).
  std::map<Symbol, std::uint64_t> entry_nodes;
  std::uint64_t link_node = 0;
};

struct ChangeRecord {
  int time_index = 0;
  std::map<Symbol, ObjectDelta> entries;
};

class WorldState {
 public:
  /// Builds the initial environment. Throws ValidationError on duplicate
  /// object ids. An empty property map is allowed.
  explicit WorldState(const std::vector<EnvObject>& objects,
                      MetricsRecorder* metrics = nullptr);

  /// Installs one timepoint's changes and returns the owned record.
  /// `time_index` must be strictly greater than any previous one; every
  /// object must exist; one (object, prop) pair may appear at most once
  /// per call. Throws ValidationError otherwise.
  const ChangeRecord& apply_changes(int time_index,
                                    const std::vector<ChangeTriple>& changes);

  /// Value of `prop` on `object_id` as of timepoint `at_time` (changes
  /// recorded at `at_time` itself are visible: the record describes the
  /// state after the action ending there). Throws ValidationError for an
  /// unknown object or a property with no value at that time.
  Symbol query(const Symbol& object_id, const Symbol& prop, int at_time) const;

  /// query() that reports failure as nullopt; constraint evaluation
  /// treats lookup failures as ordinary constraint violations.
  std::optional<Symbol> try_query(const Symbol& object_id, const Symbol& prop,
                                  int at_time) const;

  bool has_object(const Symbol& object_id) const {
    return initial_.count(object_id) != 0;
  }
  const std::map<Symbol, EnvObject>& initial() const { return initial_; }
  const ObjectDelta* latest_delta(const Symbol& object_id) const;
  int last_time_index() const { return last_time_; }

 private:
  std::map<Symbol, EnvObject> initial_;
  std::map<Symbol, const ObjectDelta*> latest_by_object_;
  std::deque<ChangeRecord> history_;  // stable addresses
  int last_time_ = 0;
  MetricsRecorder* metrics_ = nullptr;
  // Node ids of initial property entries, for lifespan accounting.
  std::map<std::pair<Symbol, Symbol>, std::uint64_t> initial_nodes_;
};

}  // namespace planrec

#endif  // PLANREC_WORLDSTATE_HPP

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

#ifndef PLANREC_TIMELINE_HPP
#define PLANREC_TIMELINE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "planrec/kb.hpp"
#include "planrec/metrics.hpp"
#include "planrec/worldstate.hpp"

namespace planrec {

struct Hypothesis;
struct Timepoint;

// One observed primitive action or one inferred intention, anchored to
// the timepoints immediately before and after it. Primitives span
// exactly one step; inferred intentions span the steps of all the
// actions they caused.
struct ActionInstance {
  enum class Kind { primitive, inferred };

  Symbol type;
  std::vector<Symbol> args;
  Timepoint* start = nullptr;
  Timepoint* end = nullptr;
  Kind kind = Kind::primitive;
  const Hypothesis* provenance = nullptr;  // inferred instances only
  std::uint64_t node = 0;
};

struct ParsimonyEntry {
  const ActionInstance* instance = nullptr;
  int distance = 0;  // instances from here back to the initial timepoint
};

struct StoreEntry {
  Hypothesis* hypothesis = nullptr;
  std::uint64_t node = 0;
};

// Key identifying an already-processed inferred intention at one end
// timepoint, so identical conclusions reached through different schema
// instances are not re-processed.
using IntentKey = std::tuple<Symbol, std::vector<Symbol>, int>;

struct Timepoint {
  int index = 0;
  Timepoint* prev = nullptr;
  const ChangeRecord* change = nullptr;
  // Waiting hypotheses keyed by the type they predict next, in insertion
  // order per key.
  std::map<Symbol, std::vector<StoreEntry>> store;
  std::optional<ParsimonyEntry> parsimony;  // empty only at the initial tp
  std::set<IntentKey> processed_intents;
  std::uint64_t node = 0;

  bool is_initial() const { return prev == nullptr; }
  /// Intention-path distance back to the initial timepoint; 0 there,
  /// otherwise the installed parsimony distance (-1 when none yet).
  int distance() const {
    if (is_initial()) return 0;
    return parsimony ? parsimony->distance : -1;
  }
};

// One element of a cover: an intention (or primitive) with concrete
// arguments over a timepoint span. Plain values, so explanations and
// oracle covers outlive the session that produced them.
struct CoverItem {
  Symbol type;
  std::vector<Symbol> args;
  int start = 0;
  int end = 0;

  bool operator==(const CoverItem&) const = default;
  auto operator<=>(const CoverItem&) const = default;
};

struct Explanation {
  std::vector<CoverItem> intents;  // chronological, gapless
  int covered_actions = 0;

  bool operator==(const Explanation&) const = default;
};

/// Owns the timepoint chain of one inference session.
class Timeline {
 public:
  explicit Timeline(MetricsRecorder* metrics = nullptr);

  Timepoint& initial() { return points_.front(); }
  Timepoint& current() { return points_.back(); }
  const Timepoint& current() const { return points_.back(); }
  std::size_t size() const { return points_.size(); }
  const Timepoint& at(std::size_t index) const { return points_[index]; }

  /// Appends a fresh timepoint after the current one, with an empty
  /// hypothesis store and no parsimony pointer.
  Timepoint& append(const ChangeRecord* change);

  /// Parks `h` at `tp` under the type it predicts next.
  void add_hypothesis(Timepoint& tp, const Symbol& predicted_type,
                      Hypothesis* h);

  /// Hypotheses parked at `tp` waiting for `action_type`, as a snapshot:
  /// entries added while the caller processes the action are not
  /// included. Recording the retrieval as node accesses.
  std::vector<Hypothesis*> hypotheses_for(Timepoint& tp,
                                          const Symbol& action_type);

  /// Installs `candidate` as `tp`'s parsimony pointer iff it offers a
  /// strictly shorter intention path to the initial timepoint than the
  /// incumbent (ties keep the incumbent). Returns true on install.
  /// Throws InferenceError if the candidate's start has no distance.
  bool update_parsimony(Timepoint& tp, const ActionInstance& candidate);

  /// When enabled, every parsimony comparison is re-derived by walking
  /// the two pointer chains in lockstep instead of comparing stored
  /// distances, and any disagreement throws. Off by default.
  void set_cross_check(bool on) { cross_check_ = on; }

  MetricsRecorder* metrics() const { return metrics_; }

 private:
  std::deque<Timepoint> points_;
  MetricsRecorder* metrics_ = nullptr;
  bool cross_check_ = false;
};

/// Follows parsimony pointers from `final_tp` back to the initial
/// timepoint and returns the covering instances in chronological order.
/// Throws InferenceError on a broken chain.
std::vector<const ActionInstance*> trace_instances(
    const Timepoint& final_tp, MetricsRecorder* metrics = nullptr);

/// trace_instances() flattened to a value-type explanation.
Explanation trace(const Timepoint& final_tp, MetricsRecorder* metrics = nullptr);

/// `(explanation (intent NAME arg* (span START END))*)`, single line.
std::string serialize_explanation(const Explanation& explanation);

}  // namespace planrec

#endif  // PLANREC_TIMELINE_HPP

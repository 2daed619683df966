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

#ifndef PLANREC_ENGINE_HPP
#define PLANREC_ENGINE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planrec/kb.hpp"
#include "planrec/metrics.hpp"
#include "planrec/timeline.hpp"
#include "planrec/worldstate.hpp"

namespace planrec {

// Inference core. Actions are ingested one at a time; each observation
// evokes fresh hypotheses from the knowledge base (schemas predicting it
// as their first effect) and is checked against the hypotheses that
// were already waiting for it at its start timepoint. A hypothesis whose
// predictions are all verified yields an inferred intention, which is
// processed recursively as if it had been observed. Parsimony pointers
// maintained along the way give the shortest covering explanation at
// finish().

// A partially matched schema instance. Bindings accumulate from
// unification and from prop-at constraints that bind their value slot;
// pending holds the constraint atoms not yet evaluable.
struct Hypothesis {
  enum class Status { active, completed, abandoned };

  const Schema* schema = nullptr;
  std::map<Symbol, Symbol> bindings;
  std::size_t next_effect = 0;
  Timepoint* start_tp = nullptr;
  Timepoint* current_tp = nullptr;
  std::vector<ConstraintAtom> pending;
  Status status = Status::active;
  std::uint64_t node = 0;
  std::map<Symbol, std::uint64_t> binding_nodes;

  bool completed() const { return status == Status::completed; }
};

struct ActionSpec {
  Symbol type;
  std::vector<Symbol> args;

  bool operator==(const ActionSpec&) const = default;
};

struct DemoStep {
  ActionSpec action;
  std::vector<ChangeTriple> changes;

  bool operator==(const DemoStep&) const = default;
};

using BindingDelta = std::vector<std::pair<Symbol, Symbol>>;

/// Position-wise match of an effect template against observed arguments
/// under the hypothesis's current bindings. Returns the new bindings on
/// success (the hypothesis itself is never mutated here), nullopt on any
/// conflict: literal mismatch, bound-variable mismatch, or two uses of
/// one variable demanding different values.
std::optional<BindingDelta> unify_effect(const Hypothesis& h,
                                         const EffectTemplate& tmpl,
                                         const std::vector<Symbol>& observed,
                                         MetricsRecorder* metrics = nullptr);

enum class EvalPhase { incremental, completion };

/// Evaluates every currently evaluable pending constraint of `h`,
/// removing the ones evaluated and binding unbound prop-at value
/// variables from the queried world state. End-anchored atoms are only
/// evaluable in the completion phase, where `end_index` is known; the
/// completion phase also fails if any atom remains unresolvable.
/// Returns false as soon as one atom fails (lookup failures count as
/// violations, not errors).
bool eval_constraints(const WorldState& world, Hypothesis& h, EvalPhase phase,
                      int start_index, int end_index,
                      MetricsRecorder* metrics = nullptr);

struct SessionOptions {
  int recursion_depth_limit = 64;
  // Re-derive every parsimony comparison by walking the pointer chains
  // (slow path used by the original formulation) and throw on
  // disagreement with the stored distances.
  bool cross_check_parsimony = false;
};

/// One online inference run over one demonstration. Strictly sequential;
/// distinct sessions sharing a KnowledgeBase may run concurrently.
class Session {
 public:
  Session(const KnowledgeBase& kb, const std::vector<EnvObject>& init_env,
          MetricsRecorder* metrics = nullptr, SessionOptions options = {});

  /// Ingests the next demonstration step: applies the environment
  /// changes, appends a timepoint, and processes the action (and,
  /// recursively, any intentions it completes).
  void push_step(const ActionSpec& action,
                 const std::vector<ChangeTriple>& changes);

  /// Traces the parsimony pointers into the final explanation.
  Explanation finish();

  const KnowledgeBase& kb() const { return kb_; }
  const WorldState& world() const { return world_; }
  Timeline& timeline() { return timeline_; }
  const std::deque<ActionInstance>& instances() const { return instances_; }
  const std::deque<Hypothesis>& hypotheses() const { return hypotheses_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  void process_action(ActionInstance& action, int depth);
  void verify_hypothesis(Hypothesis& h, ActionInstance& action, int depth);
  void commit_bindings(Hypothesis& h, const BindingDelta& delta);

  const KnowledgeBase& kb_;
  MetricsRecorder* metrics_;
  SessionOptions options_;
  WorldState world_;
  Timeline timeline_;
  std::deque<ActionInstance> instances_;
  std::deque<Hypothesis> hypotheses_;
  std::vector<std::string> diagnostics_;
};

/// Runs a whole demonstration through a Session: the loop reads one
/// (action, changes) pair at a time, so processing is fully online.
Explanation explain(const KnowledgeBase& kb, const std::vector<DemoStep>& demo,
                    const std::vector<EnvObject>& init_env,
                    MetricsRecorder* metrics = nullptr,
                    SessionOptions options = {});

}  // namespace planrec

#endif  // PLANREC_ENGINE_HPP

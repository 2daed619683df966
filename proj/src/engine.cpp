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

#include "planrec/engine.hpp"

#include <cassert>

#include "planrec/errors.hpp"

namespace planrec {

namespace {

// Resolves a term to a concrete symbol: literals are themselves,
// variables resolve through the hypothesis bindings (nullopt if unbound).
std::optional<Symbol> resolve(const Hypothesis& h, const Term& term,
                              MetricsRecorder* metrics) {
  if (!term.is_var()) return term.value;
  auto it = h.bindings.find(term.value);
  if (it == h.bindings.end()) return std::nullopt;
  if (metrics) {
    auto node = h.binding_nodes.find(term.value);
    if (node != h.binding_nodes.end())
      metrics->access(node->second, NodeKind::binding);
  }
  return it->second;
}

}  // namespace

std::optional<BindingDelta> unify_effect(const Hypothesis& h,
                                         const EffectTemplate& tmpl,
                                         const std::vector<Symbol>& observed,
                                         MetricsRecorder* metrics) {
  if (tmpl.args.size() != observed.size()) return std::nullopt;
  BindingDelta delta;
  for (std::size_t i = 0; i < tmpl.args.size(); ++i) {
    const Term& term = tmpl.args[i];
    const Symbol& value = observed[i];
    if (!term.is_var()) {
      if (term.value != value) return std::nullopt;
      continue;
    }
    if (std::optional<Symbol> bound = resolve(h, term, metrics)) {
      if (*bound != value) return std::nullopt;
      continue;
    }
    // Repeated variables within one template must agree with each other.
    bool seen = false;
    for (const auto& [var, val] : delta) {
      if (var != term.value) continue;
      seen = true;
      if (val != value) return std::nullopt;
      break;
    }
    if (!seen) delta.emplace_back(term.value, value);
  }
  return delta;
}

namespace {

bool atom_evaluable(const Hypothesis& h, const ConstraintAtom& atom,
                    EvalPhase phase) {
  auto resolvable = [&h](const Term& t) {
    return !t.is_var() || h.bindings.count(t.value) != 0;
  };
  switch (atom.tag) {
    case ConstraintAtom::Tag::eq:
    case ConstraintAtom::Tag::neq:
      return resolvable(atom.lhs) && resolvable(atom.rhs);
    case ConstraintAtom::Tag::prop_at:
      if (atom.anchor == ConstraintAtom::Anchor::end &&
          phase != EvalPhase::completion)
        return false;
      // An unbound value variable is fine: the query result binds it.
      return resolvable(atom.object);
  }
  return false;
}

void bind_var(Hypothesis& h, const Symbol& var, const Symbol& value,
              MetricsRecorder* metrics) {
  h.bindings[var] = value;
  if (metrics) h.binding_nodes[var] = metrics->create(NodeKind::binding);
}

bool eval_atom(const WorldState& world, Hypothesis& h,
               const ConstraintAtom& atom, int start_index, int end_index,
               MetricsRecorder* metrics) {
  switch (atom.tag) {
    case ConstraintAtom::Tag::eq:
    case ConstraintAtom::Tag::neq: {
      Symbol lhs = *resolve(h, atom.lhs, metrics);
      Symbol rhs = *resolve(h, atom.rhs, metrics);
      return atom.tag == ConstraintAtom::Tag::eq ? lhs == rhs : lhs != rhs;
    }
    case ConstraintAtom::Tag::prop_at: {
      Symbol object = *resolve(h, atom.object, metrics);
      int at_time = atom.anchor == ConstraintAtom::Anchor::start ? start_index
                                                                 : end_index;
      std::optional<Symbol> value = world.try_query(object, atom.prop, at_time);
      if (!value) return false;  // lookup failure is a violation
      if (std::optional<Symbol> expected = resolve(h, atom.value, metrics))
        return *expected == *value;
      bind_var(h, atom.value.value, *value, metrics);
      return true;
    }
  }
  return false;
}

}  // namespace

bool eval_constraints(const WorldState& world, Hypothesis& h, EvalPhase phase,
                      int start_index, int end_index,
                      MetricsRecorder* metrics) {
  // A prop-at atom can bind a variable that makes an earlier-listed atom
  // evaluable, so sweep until a pass makes no progress.
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (auto it = h.pending.begin(); it != h.pending.end();) {
      if (!atom_evaluable(h, *it, phase)) {
        ++it;
        continue;
      }
      if (!eval_atom(world, h, *it, start_index, end_index, metrics))
        return false;
      it = h.pending.erase(it);
      progressed = true;
    }
  }
  // At completion everything must have been decided; an atom that still
  // has unbound variables was never verified.
  if (phase == EvalPhase::completion && !h.pending.empty()) return false;
  return true;
}

Session::Session(const KnowledgeBase& kb, const std::vector<EnvObject>& init_env,
                 MetricsRecorder* metrics, SessionOptions options)
    : kb_(kb),
      metrics_(metrics),
      options_(options),
      world_(init_env, metrics),
      timeline_(metrics) {
  timeline_.set_cross_check(options_.cross_check_parsimony);
}

void Session::push_step(const ActionSpec& action,
                        const std::vector<ChangeTriple>& changes) {
  const TypeSignature* sig = kb_.signature(action.type);
  if (!sig) throw ValidationError("undeclared action type: " + action.type);
  if (sig->kind != TypeKind::primitive)
    throw ValidationError("observed action type is not primitive: " +
                          action.type);
  if (static_cast<int>(action.args.size()) != sig->arity)
    throw ValidationError("arity mismatch for action " + action.type);

  int time_index = timeline_.current().index + 1;
  const ChangeRecord& record = world_.apply_changes(time_index, changes);
  Timepoint& end = timeline_.append(&record);

  instances_.push_back({});
  ActionInstance& instance = instances_.back();
  instance.type = action.type;
  instance.args = action.args;
  instance.start = end.prev;
  instance.end = &end;
  instance.kind = ActionInstance::Kind::primitive;
  if (metrics_) instance.node = metrics_->create(NodeKind::action);

  process_action(instance, 0);
}

void Session::process_action(ActionInstance& action, int depth) {
  if (depth > options_.recursion_depth_limit)
    throw InferenceError("inference recursion depth limit exceeded (" +
                         std::to_string(options_.recursion_depth_limit) +
                         ") at " + action.type);

  timeline_.update_parsimony(*action.end, action);

  if (action.kind == ActionInstance::Kind::inferred) {
    IntentKey key{action.type, action.args, action.start->index};
    if (!action.end->processed_intents.insert(std::move(key)).second)
      return;  // identical conclusion already processed at this timepoint
  }

  // Snapshot before any verification: hypotheses parked while this
  // action is processed are never matched against it.
  std::vector<Hypothesis*> waiting =
      timeline_.hypotheses_for(*action.start, action.type);

  // Bottom-up evocation: fresh hypotheses, immediately verified against
  // the action that evoked them.
  for (const Schema* schema : kb_.schemas_for_first_effect(action.type)) {
    hypotheses_.push_back({});
    Hypothesis& h = hypotheses_.back();
    h.schema = schema;
    h.start_tp = action.start;
    h.current_tp = action.start;
    h.pending = schema->constraints;
    if (metrics_) h.node = metrics_->create(NodeKind::hypothesis);
    verify_hypothesis(h, action, depth);
  }

  // Top-down verification of the predictions parked at the action's
  // start timepoint.
  for (Hypothesis* h : waiting) {
    if (h->status != Hypothesis::Status::active) continue;
    if (h->current_tp != action.start) continue;  // advanced elsewhere
    verify_hypothesis(*h, action, depth);
  }
}

void Session::commit_bindings(Hypothesis& h, const BindingDelta& delta) {
  for (const auto& [var, value] : delta) bind_var(h, var, value, metrics_);
}

void Session::verify_hypothesis(Hypothesis& h, ActionInstance& action,
                                int depth) {
  if (metrics_) metrics_->access(h.node, NodeKind::hypothesis);
  assert(h.next_effect < h.schema->effects.size());
  const EffectTemplate& tmpl = h.schema->effects[h.next_effect];
  assert(tmpl.effect_type == action.type);

  std::optional<BindingDelta> delta =
      unify_effect(h, tmpl, action.args, metrics_);
  if (!delta) {
    h.status = Hypothesis::Status::abandoned;
    return;
  }
  commit_bindings(h, *delta);

  if (!eval_constraints(world_, h, EvalPhase::incremental,
                        h.start_tp->index, -1, metrics_)) {
    h.status = Hypothesis::Status::abandoned;
    return;
  }

  bool last_effect = h.next_effect + 1 == h.schema->effects.size();
  if (!last_effect) {
    ++h.next_effect;
    h.current_tp = action.end;
    timeline_.add_hypothesis(*action.end,
                             h.schema->effects[h.next_effect].effect_type, &h);
    return;
  }

  // All predictions verified: settle end-anchored constraints, check the
  // cause parameters, and process the inferred intention recursively.
  if (!eval_constraints(world_, h, EvalPhase::completion, h.start_tp->index,
                        action.end->index, metrics_)) {
    h.status = Hypothesis::Status::abandoned;
    return;
  }
  std::vector<Symbol> args;
  args.reserve(h.schema->cause_params.size());
  for (const Symbol& param : h.schema->cause_params) {
    auto it = h.bindings.find(param);
    if (it == h.bindings.end()) {
      h.status = Hypothesis::Status::abandoned;
      diagnostics_.push_back("completed hypothesis for " +
                             h.schema->cause_type +
                             " left cause parameter unbound: " + param);
      return;
    }
    args.push_back(it->second);
  }
  h.next_effect = h.schema->effects.size();
  h.current_tp = action.end;
  h.status = Hypothesis::Status::completed;

  instances_.push_back({});
  ActionInstance& intent = instances_.back();
  intent.type = h.schema->cause_type;
  intent.args = std::move(args);
  intent.start = h.start_tp;
  intent.end = action.end;
  intent.kind = ActionInstance::Kind::inferred;
  intent.provenance = &h;
  if (metrics_) intent.node = metrics_->create(NodeKind::intention);

  process_action(intent, depth + 1);
}

Explanation Session::finish() {
  return trace(timeline_.current(), metrics_);
}

Explanation explain(const KnowledgeBase& kb, const std::vector<DemoStep>& demo,
                    const std::vector<EnvObject>& init_env,
                    MetricsRecorder* metrics, SessionOptions options) {
  Session session(kb, init_env, metrics, options);
  for (const DemoStep& step : demo) session.push_step(step.action, step.changes);
  return session.finish();
}

}  // namespace planrec

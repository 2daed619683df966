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

#include "planrec/oracle.hpp"

#include <algorithm>

#include "planrec/errors.hpp"

namespace planrec {

namespace {

WorldState replay_world(const std::vector<DemoStep>& demo,
                        const std::vector<EnvObject>& init_env) {
  WorldState world(init_env);
  for (std::size_t i = 0; i < demo.size(); ++i)
    world.apply_changes(static_cast<int>(i) + 1, demo[i].changes);
  return world;
}

// Template-vs-arguments match on a plain bindings map; literal and
// already-bound positions must agree, unbound variables bind in place.
bool unify_args(const std::vector<Term>& templ, const std::vector<Symbol>& args,
                std::map<Symbol, Symbol>& bindings) {
  if (templ.size() != args.size()) return false;
  for (std::size_t i = 0; i < templ.size(); ++i) {
    const Term& term = templ[i];
    if (!term.is_var()) {
      if (term.value != args[i]) return false;
      continue;
    }
    auto it = bindings.find(term.value);
    if (it != bindings.end()) {
      if (it->second != args[i]) return false;
    } else {
      bindings[term.value] = args[i];
    }
  }
  return true;
}

}  // namespace

DerivationChart::DerivationChart(const KnowledgeBase& kb,
                                 const std::vector<DemoStep>& demo,
                                 const std::vector<EnvObject>& init_env)
    : kb_(kb),
      length_(static_cast<int>(demo.size())),
      world_(replay_world(demo, init_env)) {
  actions_.reserve(demo.size());
  for (const DemoStep& step : demo) actions_.push_back(step.action);
  cells_.resize(length_ + 1);

  // Observed primitives are their own completions.
  for (int i = 0; i < length_; ++i)
    cells_[i][actions_[i].type].insert({i + 1, actions_[i].args});

  // Everything at a start position can only depend on positions at or
  // after it, so close cells right to left; within a position, iterate
  // to a fixpoint to handle schemas whose first effects stay in place.
  for (int start = length_ - 1; start >= 0; --start) close_position(start);
}

void DerivationChart::close_position(int start) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Schema& schema : kb_.schemas())
      match_sequence(schema, 0, start, {}, start, changed);
  }
}

void DerivationChart::match_sequence(const Schema& schema,
                                     std::size_t effect_index, int pos,
                                     const std::map<Symbol, Symbol>& bindings,
                                     int start, bool& changed) {
  if (effect_index == schema.effects.size()) {
    if (complete_schema(schema, start, pos, bindings)) changed = true;
    return;
  }
  const EffectTemplate& tmpl = schema.effects[effect_index];
  for (const ChartCompletion& completion :
       completions(tmpl.effect_type, pos)) {
    std::map<Symbol, Symbol> extended = bindings;
    if (!unify_args(tmpl.args, completion.args, extended)) continue;
    match_sequence(schema, effect_index + 1, completion.end, extended, start,
                   changed);
  }
}

bool DerivationChart::complete_schema(const Schema& schema, int start, int end,
                                      std::map<Symbol, Symbol> bindings) {
  // Reuse the engine's constraint evaluator so the oracle accepts exactly
  // what a hypothesis would: all atoms must become evaluable and pass,
  // with prop-at atoms binding their value slot from the replayed world.
  Hypothesis probe;
  probe.schema = &schema;
  probe.bindings = std::move(bindings);
  probe.pending = schema.constraints;
  if (!eval_constraints(world_, probe, EvalPhase::completion, start, end))
    return false;

  ChartCompletion completion;
  completion.end = end;
  for (const Symbol& param : schema.cause_params) {
    auto it = probe.bindings.find(param);
    if (it == probe.bindings.end()) return false;  // never bindable here
    completion.args.push_back(it->second);
  }
  return cells_[start][schema.cause_type].insert(completion).second;
}

const std::set<ChartCompletion>& DerivationChart::completions(
    const Symbol& type, int start) const {
  if (start < 0 || start > length_) return empty_;
  auto it = cells_[start].find(type);
  return it == cells_[start].end() ? empty_ : it->second;
}

std::vector<Symbol> DerivationChart::types_at(int start) const {
  std::vector<Symbol> types;
  if (start < 0 || start > length_) return types;
  for (const auto& [type, completions] : cells_[start])
    if (!completions.empty()) types.push_back(type);
  return types;
}

namespace {

void enumerate_from(const DerivationChart& chart, int pos,
                    std::vector<CoverItem>& prefix, CoverEnumeration& out,
                    std::size_t limit) {
  if (out.covers.size() >= limit) {
    out.truncated = true;
    return;
  }
  if (pos == chart.length()) {
    out.covers.push_back({prefix});
    return;
  }
  for (const Symbol& type : chart.types_at(pos)) {
    for (const ChartCompletion& completion : chart.completions(type, pos)) {
      prefix.push_back({type, completion.args, pos, completion.end});
      enumerate_from(chart, completion.end, prefix, out, limit);
      prefix.pop_back();
      if (out.truncated) return;
    }
  }
}

void check_length(const std::vector<DemoStep>& demo,
                  const OracleOptions& options) {
  if (static_cast<int>(demo.size()) > options.max_actions)
    throw ValidationError(
        "demo length " + std::to_string(demo.size()) +
        " exceeds the oracle bound of " + std::to_string(options.max_actions));
}

}  // namespace

CoverEnumeration enumerate_covers(const KnowledgeBase& kb,
                                  const std::vector<DemoStep>& demo,
                                  const std::vector<EnvObject>& init_env,
                                  const OracleOptions& options) {
  check_length(demo, options);
  DerivationChart chart(kb, demo, init_env);
  CoverEnumeration out;
  std::vector<CoverItem> prefix;
  enumerate_from(chart, 0, prefix, out, options.cover_limit);
  return out;
}

std::optional<int> min_cover_cardinality(const KnowledgeBase& kb,
                                         const std::vector<DemoStep>& demo,
                                         const std::vector<EnvObject>& init_env,
                                         const OracleOptions& options) {
  check_length(demo, options);
  DerivationChart chart(kb, demo, init_env);
  int n = chart.length();
  constexpr int kUnreachable = -1;
  std::vector<int> best(n + 1, kUnreachable);
  best[n] = 0;
  for (int pos = n - 1; pos >= 0; --pos) {
    for (const Symbol& type : chart.types_at(pos)) {
      for (const ChartCompletion& completion : chart.completions(type, pos)) {
        if (best[completion.end] == kUnreachable) continue;
        int candidate = 1 + best[completion.end];
        if (best[pos] == kUnreachable || candidate < best[pos])
          best[pos] = candidate;
      }
    }
  }
  if (best[0] == kUnreachable) return std::nullopt;
  return best[0];
}

bool validate_cover(const KnowledgeBase& kb, const std::vector<DemoStep>& demo,
                    const std::vector<EnvObject>& init_env,
                    const std::vector<CoverItem>& cover) {
  DerivationChart chart(kb, demo, init_env);
  int pos = 0;
  for (const CoverItem& item : cover) {
    if (item.start != pos || item.end <= item.start) return false;
    const std::set<ChartCompletion>& completions =
        chart.completions(item.type, item.start);
    if (!completions.count({item.end, item.args})) return false;
    pos = item.end;
  }
  return pos == chart.length();
}

}  // namespace planrec

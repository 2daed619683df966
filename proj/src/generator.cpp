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

#include "planrec/generator.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "planrec/errors.hpp"
#include "planrec/sexpr.hpp"

namespace planrec {

namespace {

using SimState = std::map<Symbol, std::map<Symbol, Symbol>>;
using Bindings = std::map<Symbol, Symbol>;

// mt19937_64 output is fully specified, so modulo reduction keeps demos
// byte-identical across platforms (the slight bias is irrelevant here).
std::size_t pick_index(std::mt19937_64& rng, std::size_t size) {
  return static_cast<std::size_t>(rng() % size);
}

std::optional<Symbol> sim_lookup(const SimState& sim, const Symbol& object,
                                 const Symbol& prop) {
  auto obj = sim.find(object);
  if (obj == sim.end()) return std::nullopt;
  auto entry = obj->second.find(prop);
  if (entry == obj->second.end()) return std::nullopt;
  return entry->second;
}

std::optional<Symbol> resolve(const Bindings& bindings, const Term& term) {
  if (!term.is_var()) return term.value;
  auto it = bindings.find(term.value);
  if (it == bindings.end()) return std::nullopt;
  return it->second;
}

struct Expander {
  const KnowledgeBase& kb;
  const GenConfig& cfg;
  std::mt19937_64& rng;
  SimState sim;
  std::vector<DemoStep> steps;

  std::map<Symbol, std::vector<const Schema*>> schemas_by_cause;
  std::vector<Symbol> sampling_universe;  // object ids then locations, sorted

  Expander(const KnowledgeBase& kb_in, const GenConfig& cfg_in,
           std::mt19937_64& rng_in)
      : kb(kb_in), cfg(cfg_in), rng(rng_in) {
    for (const EnvObject& obj : cfg.pool.objects) sim[obj.id] = obj.properties;
    for (const Schema& s : kb.schemas())
      schemas_by_cause[s.cause_type].push_back(&s);
    std::set<Symbol> universe;
    for (const EnvObject& obj : cfg.pool.objects) universe.insert(obj.id);
    for (const Symbol& loc : cfg.pool.locations) universe.insert(loc);
    sampling_universe.assign(universe.begin(), universe.end());
  }

  // Constraint solving at intention start: propagate prop-at lookups and
  // check whatever is decidable; sample one domain-filtered value for
  // the first still-unbound variable; repeat. End-anchored atoms are
  // deferred to expand-time verification.
  bool solve_bindings(const Schema& schema, Bindings& bindings) {
    std::vector<ConstraintAtom> pending;
    for (const ConstraintAtom& atom : schema.constraints)
      if (!(atom.tag == ConstraintAtom::Tag::prop_at &&
            atom.anchor == ConstraintAtom::Anchor::end))
        pending.push_back(atom);

    for (;;) {
      // Fixpoint pass over the decidable atoms.
      bool progressed = true;
      while (progressed) {
        progressed = false;
        for (auto it = pending.begin(); it != pending.end();) {
          std::optional<bool> verdict = try_eval(*it, bindings);
          if (!verdict) {
            ++it;
            continue;
          }
          if (!*verdict) return false;
          it = pending.erase(it);
          progressed = true;
        }
      }

      Symbol unbound;
      bool found = false;
      for (const Symbol& var : schema.vars) {
        if (!bindings.count(var)) {
          unbound = var;
          found = true;
          break;
        }
      }
      if (!found) return pending.empty();

      std::vector<Symbol> domain = domain_for(unbound, pending, bindings);
      if (domain.empty()) return false;
      bindings[unbound] = domain[pick_index(rng, domain.size())];
    }
  }

  // nullopt: not yet decidable. prop-at with a bound object binds its
  // value slot from the current simulated state.
  std::optional<bool> try_eval(const ConstraintAtom& atom, Bindings& bindings) {
    switch (atom.tag) {
      case ConstraintAtom::Tag::eq:
      case ConstraintAtom::Tag::neq: {
        std::optional<Symbol> lhs = resolve(bindings, atom.lhs);
        std::optional<Symbol> rhs = resolve(bindings, atom.rhs);
        if (!lhs || !rhs) return std::nullopt;
        return atom.tag == ConstraintAtom::Tag::eq ? *lhs == *rhs
                                                   : *lhs != *rhs;
      }
      case ConstraintAtom::Tag::prop_at: {
        std::optional<Symbol> object = resolve(bindings, atom.object);
        if (!object) return std::nullopt;
        std::optional<Symbol> value = sim_lookup(sim, *object, atom.prop);
        if (!value) return false;
        if (std::optional<Symbol> expected = resolve(bindings, atom.value))
          return *expected == *value;
        bindings[atom.value.value] = *value;
        return true;
      }
    }
    return std::nullopt;
  }

  // Sampling domain for `var`, narrowed by the pending atoms that
  // mention it: prop-at atoms with `var` as object keep only objects
  // whose property matches, neq atoms exclude the other side's value.
  std::vector<Symbol> domain_for(const Symbol& var,
                                 const std::vector<ConstraintAtom>& pending,
                                 const Bindings& bindings) {
    std::vector<Symbol> domain = sampling_universe;
    for (const ConstraintAtom& atom : pending) {
      if (atom.tag == ConstraintAtom::Tag::prop_at) {
        if (!atom.object.is_var() || atom.object.value != var) continue;
        std::optional<Symbol> expected = resolve(bindings, atom.value);
        std::vector<Symbol> narrowed;
        for (const Symbol& candidate : domain) {
          std::optional<Symbol> current = sim_lookup(sim, candidate, atom.prop);
          if (!current) continue;  // not an object, or lacks the property
          if (expected && *current != *expected) continue;
          narrowed.push_back(candidate);
        }
        domain = std::move(narrowed);
      } else if (atom.tag == ConstraintAtom::Tag::neq) {
        std::optional<Symbol> other;
        if (atom.lhs.is_var() && atom.lhs.value == var)
          other = resolve(bindings, atom.rhs);
        else if (atom.rhs.is_var() && atom.rhs.value == var)
          other = resolve(bindings, atom.lhs);
        if (!other) continue;
        std::erase(domain, *other);
      }
    }
    return domain;
  }

  std::vector<ChangeTriple> apply_primitive(const ActionSpec& action) {
    std::vector<ChangeTriple> changes;
    std::set<std::pair<Symbol, Symbol>> touched;
    auto rules = cfg.effect_rules.find(action.type);
    if (rules == cfg.effect_rules.end()) return changes;
    for (const EffectRule& rule : rules->second) {
      std::vector<Symbol> targets;
      const Symbol& target_arg = action.args.at(rule.target_arg);
      if (rule.target == EffectRule::Target::arg) {
        if (sim.count(target_arg)) targets.push_back(target_arg);
      } else {
        for (const auto& [id, props] : sim) {
          auto entry = props.find(rule.match_prop);
          if (entry != props.end() && entry->second == target_arg)
            targets.push_back(id);
        }
      }
      for (const Symbol& target : targets) {
        std::optional<Symbol> value;
        switch (rule.value) {
          case EffectRule::Value::arg:
            value = action.args.at(rule.value_arg);
            break;
          case EffectRule::Value::literal:
            value = rule.value_literal;
            break;
          case EffectRule::Value::prop_of_arg:
            value = sim_lookup(sim, action.args.at(rule.value_arg),
                               rule.value_prop);
            break;
          case EffectRule::Value::flip: {
            std::optional<Symbol> current = sim_lookup(sim, target, rule.prop);
            if (current)
              value = (*current == rule.flip_a) ? rule.flip_b : rule.flip_a;
            break;
          }
        }
        if (!value) continue;
        if (!touched.insert({target, rule.prop}).second) continue;
        changes.push_back({target, rule.prop, *value});
        sim[target][rule.prop] = *value;
      }
    }
    return changes;
  }

  // Expands one intention instance; cause arguments may be partially
  // fixed by the caller. Returns false on any constraint rejection.
  bool expand(const Symbol& cause_type, const std::vector<Symbol>* cause_args,
              int depth, Symbol& failed_schema) {
    if (depth > 64) throw GenerationError("expansion depth limit exceeded");
    auto it = schemas_by_cause.find(cause_type);
    if (it == schemas_by_cause.end())
      throw GenerationError("no schema for intention type: " + cause_type);
    const Schema& schema = *it->second[pick_index(rng, it->second.size())];
    failed_schema = schema.cause_type + " (schema " +
                    std::to_string(schema.schema_id) + ")";

    Bindings bindings;
    if (cause_args) {
      for (std::size_t i = 0; i < schema.cause_params.size(); ++i)
        bindings[schema.cause_params[i]] = (*cause_args)[i];
    }
    if (!solve_bindings(schema, bindings)) return false;

    for (const EffectTemplate& effect : schema.effects) {
      std::vector<Symbol> args;
      for (const Term& term : effect.args) args.push_back(*resolve(bindings, term));
      const TypeSignature* sig = kb.signature(effect.effect_type);
      if (sig && sig->kind == TypeKind::primitive) {
        ActionSpec action{effect.effect_type, args};
        std::vector<ChangeTriple> changes = apply_primitive(action);
        steps.push_back({std::move(action), std::move(changes)});
      } else {
        if (!expand(effect.effect_type, &args, depth + 1, failed_schema))
          return false;
      }
    }

    // End-anchored constraints are checked against the state the
    // expansion actually produced.
    for (const ConstraintAtom& atom : schema.constraints) {
      if (atom.tag != ConstraintAtom::Tag::prop_at ||
          atom.anchor != ConstraintAtom::Anchor::end)
        continue;
      std::optional<bool> verdict = try_eval(atom, bindings);
      if (!verdict || !*verdict) return false;
    }
    if (cause_args == nullptr) {
      // Record the solved cause arguments for the ground truth.
      top_level_args.clear();
      for (const Symbol& param : schema.cause_params)
        top_level_args.push_back(bindings.at(param));
      top_level_type = schema.cause_type;
    }
    return true;
  }

  Symbol top_level_type;
  std::vector<Symbol> top_level_args;
};

}  // namespace

GeneratedDemo gen_demo(const KnowledgeBase& kb, const GenConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  Expander expander(kb, cfg, rng);

  std::vector<Symbol> top_types;
  for (const auto& [type, schemas] : expander.schemas_by_cause)
    top_types.push_back(type);

  GeneratedDemo demo;
  demo.init_env = cfg.pool.objects;
  if (cfg.n_top_level > 0 && top_types.empty())
    throw ValidationError("knowledge base has no schemas to sample from");

  for (int i = 0; i < cfg.n_top_level; ++i) {
    bool done = false;
    Symbol failed_schema;
    for (int attempt = 0; attempt < cfg.max_rejections && !done; ++attempt) {
      SimState sim_snapshot = expander.sim;
      std::size_t steps_snapshot = expander.steps.size();
      Symbol type = top_types[pick_index(rng, top_types.size())];
      if (expander.expand(type, nullptr, 0, failed_schema)) {
        demo.ground_truth.push_back(
            {expander.top_level_type, expander.top_level_args});
        done = true;
      } else {
        expander.sim = std::move(sim_snapshot);
        expander.steps.resize(steps_snapshot);
      }
    }
    if (!done)
      throw GenerationError("constraint solving exhausted " +
                            std::to_string(cfg.max_rejections) +
                            " rejections; last failure in " + failed_schema);
  }
  demo.steps = std::move(expander.steps);
  return demo;
}

GenConfig default_gen_config() {
  GenConfig cfg;
  auto block = [](Symbol id, Symbol color, Symbol loc) {
    return EnvObject{std::move(id),
                     {{"type", "block"},
                      {"color", std::move(color)},
                      {"mobile", "yes"},
                      {"location", std::move(loc)}}};
  };
  cfg.pool.objects = {
      block("block1", "red", "tbl1"),
      block("block2", "green", "tbl2"),
      block("block3", "blue", "tbl3"),
      block("block4", "yellow", "tbl4"),
      {"sw1", {{"type", "switch"}, {"state", "off"}, {"mobile", "no"}}},
      {"sw2", {{"type", "switch"}, {"state", "on"}, {"mobile", "no"}}},
      {"left-gripper",
       {{"type", "gripper"}, {"position", "rest-left"}, {"mobile", "no"}}},
      {"right-gripper",
       {{"type", "gripper"}, {"position", "rest-right"}, {"mobile", "no"}}},
  };
  cfg.pool.locations = {"tbl1", "tbl2",   "tbl3",   "tbl4",
                        "air1", "shelf1", "shelf2", "bin1"};

  EffectRule grasp;
  grasp.target = EffectRule::Target::arg;
  grasp.target_arg = 0;
  grasp.prop = "location";
  grasp.value = EffectRule::Value::arg;
  grasp.value_arg = 1;

  EffectRule move;
  move.target = EffectRule::Target::arg;
  move.target_arg = 0;
  move.prop = "position";
  move.value = EffectRule::Value::arg;
  move.value_arg = 1;

  EffectRule release;
  release.target = EffectRule::Target::object_with_prop;
  release.target_arg = 0;
  release.match_prop = "location";
  release.prop = "location";
  release.value = EffectRule::Value::prop_of_arg;
  release.value_arg = 0;
  release.value_prop = "position";

  EffectRule press;
  press.target = EffectRule::Target::arg;
  press.target_arg = 0;
  press.prop = "state";
  press.value = EffectRule::Value::flip;
  press.flip_a = "on";
  press.flip_b = "off";

  cfg.effect_rules = {{"grasp", {grasp}},
                      {"move", {move}},
                      {"release", {release}},
                      {"press", {press}}};
  return cfg;
}

std::string serialize_ground_truth(const std::vector<GroundTruthItem>& items) {
  std::string out = "(ground-truth";
  for (const GroundTruthItem& item : items) {
    out += "\n  (intent " + item.type;
    for (const Symbol& arg : item.args) out += " " + arg;
    out += ")";
  }
  out += ")\n";
  return out;
}

std::vector<GroundTruthItem> parse_ground_truth(std::string_view text) {
  std::vector<Sexpr> forms = parse_sexprs(text);
  if (forms.size() != 1 || !forms[0].has_head("ground-truth"))
    throw ValidationError("expected a single (ground-truth ...) form");
  std::vector<GroundTruthItem> items;
  for (std::size_t i = 1; i < forms[0].items.size(); ++i) {
    const Sexpr& form = forms[0].items[i];
    if (!form.has_head("intent") || form.items.size() < 2)
      throw ValidationError("expected (intent NAME arg*)");
    GroundTruthItem item;
    item.type = form.items[1].atom;
    for (std::size_t j = 2; j < form.items.size(); ++j)
      item.args.push_back(form.items[j].atom);
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace planrec

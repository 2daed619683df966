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

#include "planrec/kb.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "planrec/errors.hpp"
#include "planrec/sexpr.hpp"

namespace planrec {

bool Schema::has_var(const Symbol& name) const {
  return std::find(vars.begin(), vars.end(), name) != vars.end();
}

KnowledgeBase::KnowledgeBase(std::map<Symbol, TypeSignature> signatures,
                             std::vector<Schema> schemas)
    : signatures_(std::move(signatures)), schemas_(std::move(schemas)) {
  for (const Schema& s : schemas_) {
    if (!s.effects.empty())
      first_effect_index_[s.effects.front().effect_type].push_back(&s);
  }
}

const TypeSignature* KnowledgeBase::signature(const Symbol& name) const {
  auto it = signatures_.find(name);
  return it == signatures_.end() ? nullptr : &it->second;
}

const std::vector<const Schema*>& KnowledgeBase::schemas_for_first_effect(
    const Symbol& action_type) const {
  auto it = first_effect_index_.find(action_type);
  return it == first_effect_index_.end() ? empty_ : it->second;
}

namespace {

[[noreturn]] void fail(const Sexpr& at, const std::string& message) {
  throw ParseError(message, at.line, at.col);
}

const Sexpr& expect_list(const Sexpr& node, const char* what) {
  if (!node.is_list()) fail(node, std::string("expected ") + what);
  return node;
}

const std::string& expect_atom(const Sexpr& node, const char* what) {
  if (!node.is_atom()) fail(node, std::string("expected ") + what);
  return node.atom;
}

int parse_arity(const Sexpr& node) {
  const std::string& text = expect_atom(node, "arity");
  if (text.empty() || text.size() > 6 ||
      !std::all_of(text.begin(), text.end(),
                   [](char c) { return c >= '0' && c <= '9'; }))
    fail(node, "arity must be a non-negative integer");
  return std::stoi(text);
}

struct KbBuilder {
  std::map<Symbol, TypeSignature> signatures;
  std::vector<Schema> schemas;

  const TypeSignature& lookup_type(const Sexpr& at, const Symbol& name) {
    auto it = signatures.find(name);
    if (it == signatures.end()) fail(at, "undeclared type: " + name);
    return it->second;
  }

  void add_signature(const Sexpr& form, TypeKind kind) {
    if (form.items.size() != 3)
      fail(form, "signature declaration takes a name and an arity");
    Symbol name = expect_atom(form.items[1], "type name");
    int arity = parse_arity(form.items[2]);
    if (signatures.count(name)) fail(form.items[1], "duplicate signature: " + name);
    signatures[name] = {name, arity, kind};
  }

  Term make_term(const Sexpr& node, const Schema& schema) {
    const std::string& name = expect_atom(node, "term");
    return schema.has_var(name) ? Term::var(name) : Term::lit(name);
  }

  EffectTemplate parse_effect(const Sexpr& form, const Schema& schema) {
    expect_list(form, "effect template");
    if (form.items.empty()) fail(form, "empty effect template");
    EffectTemplate effect;
    effect.effect_type = expect_atom(form.items[0], "effect type");
    const TypeSignature& sig = lookup_type(form.items[0], effect.effect_type);
    for (std::size_t i = 1; i < form.items.size(); ++i)
      effect.args.push_back(make_term(form.items[i], schema));
    if (static_cast<int>(effect.args.size()) != sig.arity)
      fail(form, "arity mismatch for " + effect.effect_type + ": expected " +
                     std::to_string(sig.arity) + ", got " +
                     std::to_string(effect.args.size()));
    return effect;
  }

  ConstraintAtom parse_atom(const Sexpr& form, const Schema& schema) {
    expect_list(form, "constraint atom");
    if (form.items.empty()) fail(form, "empty constraint atom");
    const std::string& head = expect_atom(form.items[0], "constraint kind");
    ConstraintAtom atom;
    if (head == "eq" || head == "neq") {
      if (form.items.size() != 3) fail(form, head + " takes two terms");
      atom.tag = head == "eq" ? ConstraintAtom::Tag::eq
                              : ConstraintAtom::Tag::neq;
      atom.lhs = make_term(form.items[1], schema);
      atom.rhs = make_term(form.items[2], schema);
      return atom;
    }
    if (head == "prop-at") {
      if (form.items.size() != 5)
        fail(form, "prop-at takes anchor, object, property, value");
      atom.tag = ConstraintAtom::Tag::prop_at;
      const std::string& anchor = expect_atom(form.items[1], "anchor");
      if (anchor == "start") {
        atom.anchor = ConstraintAtom::Anchor::start;
      } else if (anchor == "end") {
        atom.anchor = ConstraintAtom::Anchor::end;
      } else {
        fail(form.items[1], "anchor must be start or end");
      }
      atom.object = make_term(form.items[2], schema);
      atom.prop = expect_atom(form.items[3], "property name");
      if (schema.has_var(atom.prop))
        fail(form.items[3], "property name must be a literal");
      atom.value = make_term(form.items[4], schema);
      return atom;
    }
    fail(form.items[0], "unknown constraint kind: " + head);
  }

  void add_schema(const Sexpr& form) {
    Schema schema;
    schema.schema_id = static_cast<int>(schemas.size());
    if (form.items.size() < 4)
      fail(form, "schema needs cause, vars, and effects forms");

    const Sexpr& cause = expect_list(form.items[1], "(cause ...)");
    if (!cause.has_head("cause") || cause.items.size() != 3)
      fail(form.items[1], "expected (cause NAME (PARAM*))");
    schema.cause_type = expect_atom(cause.items[1], "cause type");
    const TypeSignature& cause_sig =
        lookup_type(cause.items[1], schema.cause_type);
    if (cause_sig.kind != TypeKind::abstract)
      fail(cause.items[1], "cause type must be abstract: " + schema.cause_type);
    const Sexpr& params = expect_list(cause.items[2], "cause parameter list");
    for (const Sexpr& p : params.items)
      schema.cause_params.push_back(expect_atom(p, "cause parameter"));
    if (static_cast<int>(schema.cause_params.size()) != cause_sig.arity)
      fail(cause, "arity mismatch for cause " + schema.cause_type);

    const Sexpr& vars = expect_list(form.items[2], "(vars ...)");
    if (!vars.has_head("vars")) fail(form.items[2], "expected (vars ...)");
    for (std::size_t i = 1; i < vars.items.size(); ++i) {
      Symbol v = expect_atom(vars.items[i], "variable");
      if (!schema.has_var(v)) schema.vars.push_back(std::move(v));
    }

    for (const Symbol& p : schema.cause_params)
      if (!schema.has_var(p))
        fail(cause, "undeclared variable in cause parameters: " + p);

    const Sexpr& effects = expect_list(form.items[3], "(effects ...)");
    if (!effects.has_head("effects")) fail(form.items[3], "expected (effects ...)");
    for (std::size_t i = 1; i < effects.items.size(); ++i)
      schema.effects.push_back(parse_effect(effects.items[i], schema));
    if (schema.effects.empty()) fail(effects, "schema has an empty effects list");

    if (form.items.size() > 5) fail(form, "unexpected extra forms in schema");
    if (form.items.size() == 5) {
      const Sexpr& constraints = expect_list(form.items[4], "(constraints ...)");
      if (!constraints.has_head("constraints"))
        fail(form.items[4], "expected (constraints ...)");
      for (std::size_t i = 1; i < constraints.items.size(); ++i)
        schema.constraints.push_back(parse_atom(constraints.items[i], schema));
    }

    schemas.push_back(std::move(schema));
  }
};

// Variables a hypothesis can actually bind while matching this schema:
// effect-template argument positions plus prop-at object/value slots.
std::set<Symbol> bindable_vars(const Schema& schema) {
  std::set<Symbol> bindable;
  for (const EffectTemplate& effect : schema.effects)
    for (const Term& t : effect.args)
      if (t.is_var()) bindable.insert(t.value);
  for (const ConstraintAtom& atom : schema.constraints) {
    if (atom.tag != ConstraintAtom::Tag::prop_at) continue;
    if (atom.object.is_var()) bindable.insert(atom.object.value);
    if (atom.value.is_var()) bindable.insert(atom.value.value);
  }
  return bindable;
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text) {
  KbBuilder builder;
  for (const Sexpr& form : parse_sexprs(text)) {
    expect_list(form, "declaration");
    if (form.has_head("primitive")) {
      builder.add_signature(form, TypeKind::primitive);
    } else if (form.has_head("abstract")) {
      builder.add_signature(form, TypeKind::abstract);
    } else if (form.has_head("schema")) {
      builder.add_schema(form);
    } else {
      fail(form, "expected primitive, abstract, or schema declaration");
    }
  }
  return KnowledgeBase(std::move(builder.signatures),
                       std::move(builder.schemas));
}

std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb) {
  std::vector<Diagnostic> out;
  auto error = [&out](std::string message, int schema_id) {
    out.push_back({Diagnostic::Severity::error, std::move(message), schema_id});
  };

  // Arity re-checks, for KBs assembled in code rather than parsed.
  for (const Schema& s : kb.schemas()) {
    const TypeSignature* cause_sig = kb.signature(s.cause_type);
    if (!cause_sig || cause_sig->kind != TypeKind::abstract)
      error("cause type is not a declared abstract type: " + s.cause_type,
            s.schema_id);
    else if (static_cast<int>(s.cause_params.size()) != cause_sig->arity)
      error("arity mismatch for cause " + s.cause_type, s.schema_id);
    if (s.effects.empty()) error("schema has an empty effects list", s.schema_id);
    for (const EffectTemplate& effect : s.effects) {
      const TypeSignature* sig = kb.signature(effect.effect_type);
      if (!sig)
        error("undeclared effect type: " + effect.effect_type, s.schema_id);
      else if (static_cast<int>(effect.args.size()) != sig->arity)
        error("arity mismatch for effect " + effect.effect_type, s.schema_id);
    }
  }

  // Cause parameters that can never receive a value.
  for (const Schema& s : kb.schemas()) {
    std::set<Symbol> bindable = bindable_vars(s);
    for (const Symbol& p : s.cause_params)
      if (!bindable.count(p))
        error("cause parameter can never be bound: " + p, s.schema_id);
  }

  // Unit-production cycles: single-effect schemas whose cause can reach
  // itself through other single-effect schemas would let inference
  // recurse forever on one span.
  std::map<Symbol, std::set<Symbol>> unit_edges;
  for (const Schema& s : kb.schemas())
    if (s.effects.size() == 1)
      unit_edges[s.cause_type].insert(s.effects.front().effect_type);
  auto reaches = [&unit_edges](const Symbol& from, const Symbol& target) {
    std::set<Symbol> seen;
    std::vector<Symbol> stack{from};
    while (!stack.empty()) {
      Symbol cur = stack.back();
      stack.pop_back();
      if (cur == target) return true;
      if (!seen.insert(cur).second) continue;
      auto it = unit_edges.find(cur);
      if (it == unit_edges.end()) continue;
      for (const Symbol& next : it->second) stack.push_back(next);
    }
    return false;
  };
  for (const Schema& s : kb.schemas()) {
    if (s.effects.size() != 1) continue;
    const Symbol& first = s.effects.front().effect_type;
    if (reaches(first, s.cause_type))
      error("unit-production cycle through " + s.cause_type + " -> " + first,
            s.schema_id);
  }

  // Effect types nothing can ever verify: not primitive (never observed)
  // and not the cause of any schema (never inferred).
  std::set<Symbol> cause_types;
  for (const Schema& s : kb.schemas()) cause_types.insert(s.cause_type);
  std::set<Symbol> warned;
  for (const Schema& s : kb.schemas()) {
    for (const EffectTemplate& effect : s.effects) {
      const TypeSignature* sig = kb.signature(effect.effect_type);
      if (!sig) continue;  // already an error above
      if (sig->kind == TypeKind::primitive) continue;
      if (cause_types.count(effect.effect_type)) continue;
      if (!warned.insert(effect.effect_type).second) continue;
      out.push_back({Diagnostic::Severity::warning,
                     "effect type can never be verified (neither primitive "
                     "nor caused by any schema): " +
                         effect.effect_type,
                     s.schema_id});
    }
  }
  return out;
}

namespace {

void write_term(std::ostream& os, const Term& t) { os << t.value; }

void write_atom_form(std::ostream& os, const ConstraintAtom& atom) {
  switch (atom.tag) {
    case ConstraintAtom::Tag::eq:
    case ConstraintAtom::Tag::neq:
      os << (atom.tag == ConstraintAtom::Tag::eq ? "(eq " : "(neq ");
      write_term(os, atom.lhs);
      os << ' ';
      write_term(os, atom.rhs);
      os << ')';
      return;
    case ConstraintAtom::Tag::prop_at:
      os << "(prop-at "
         << (atom.anchor == ConstraintAtom::Anchor::start ? "start" : "end")
         << ' ';
      write_term(os, atom.object);
      os << ' ' << atom.prop << ' ';
      write_term(os, atom.value);
      os << ')';
      return;
  }
}

}  // namespace

std::string serialize_kb(const KnowledgeBase& kb) {
  std::ostringstream os;
  for (const auto& [name, sig] : kb.signatures())
    os << (sig.kind == TypeKind::primitive ? "(primitive " : "(abstract ")
       << sig.name << ' ' << sig.arity << ")\n";
  for (const Schema& s : kb.schemas()) {
    os << "\n(schema (cause " << s.cause_type << " (";
    for (std::size_t i = 0; i < s.cause_params.size(); ++i)
      os << (i ? " " : "") << s.cause_params[i];
    os << "))\n  (vars";
    for (const Symbol& v : s.vars) os << ' ' << v;
    os << ")\n  (effects";
    for (const EffectTemplate& effect : s.effects) {
      os << "\n    (" << effect.effect_type;
      for (const Term& t : effect.args) {
        os << ' ';
        write_term(os, t);
      }
      os << ')';
    }
    os << ')';
    if (!s.constraints.empty()) {
      os << "\n  (constraints";
      for (const ConstraintAtom& atom : s.constraints) {
        os << "\n    ";
        write_atom_form(os, atom);
      }
      os << ')';
    }
    os << ")\n";
  }
  return os.str();
}

}  // namespace planrec

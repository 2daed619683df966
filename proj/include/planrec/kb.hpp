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

#ifndef PLANREC_KB_HPP
#define PLANREC_KB_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace planrec {

// Cause-effect knowledge base: schemas mapping an abstract intention
// (with parameters) to the ordered sequence of actions or sub-intentions
// it causes, plus logical constraints that must hold for the relation to
// be plausible.
//
// DSL example (a pick-and-place rule):
//
//   (primitive grasp 2) (primitive move 2) (primitive release 1)
//   (abstract relocate 2)
//   (schema (cause relocate (obj loc)) (vars obj loc gripper)
//     (effects (grasp obj gripper) (move gripper loc) (release gripper)))
//
// Variables are exactly the names listed in a schema's (vars ...) form;
// any other name in a template or constraint is a literal symbol.

using Symbol = std::string;

enum class TypeKind { primitive, abstract };

struct TypeSignature {
  Symbol name;
  int arity = 0;
  TypeKind kind = TypeKind::primitive;

  bool operator==(const TypeSignature&) const = default;
};

struct Term {
  enum class Tag { variable, literal };

  Tag tag = Tag::literal;
  Symbol value;

  static Term var(Symbol v) { return {Tag::variable, std::move(v)}; }
  static Term lit(Symbol v) { return {Tag::literal, std::move(v)}; }
  bool is_var() const { return tag == Tag::variable; }

  bool operator==(const Term&) const = default;
};

struct EffectTemplate {
  Symbol effect_type;
  std::vector<Term> args;

  bool operator==(const EffectTemplate&) const = default;
};

struct ConstraintAtom {
  enum class Tag { eq, neq, prop_at };
  enum class Anchor { start, end };

  Tag tag = Tag::eq;
  // eq / neq operands.
  Term lhs, rhs;
  // prop-at fields: the value of `object`.`prop` queried at the anchor
  // timepoint must match `value` (binding it when it is an unbound var).
  Anchor anchor = Anchor::start;
  Term object;
  Symbol prop;
  Term value;

  bool operator==(const ConstraintAtom&) const = default;
};

struct Schema {
  Symbol cause_type;
  std::vector<Symbol> cause_params;
  std::vector<Symbol> vars;  // declaration order, no duplicates
  std::vector<EffectTemplate> effects;
  std::vector<ConstraintAtom> constraints;
  int schema_id = 0;  // ordinal position in the KB file

  bool has_var(const Symbol& name) const;

  bool operator==(const Schema&) const = default;
};

struct Diagnostic {
  enum class Severity { error, warning };

  Severity severity = Severity::error;
  std::string message;
  int schema_id = -1;  // -1 when not tied to one schema
};

/// Immutable after construction; safe to share across concurrent
/// inference sessions.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(std::map<Symbol, TypeSignature> signatures,
                std::vector<Schema> schemas);

  const std::map<Symbol, TypeSignature>& signatures() const {
    return signatures_;
  }
  const std::vector<Schema>& schemas() const { return schemas_; }

  /// Null when the name has no declared signature.
  const TypeSignature* signature(const Symbol& name) const;

  /// Schemas whose first effect has the given type, in file order.
  /// Unknown types yield the empty list (evocation is simply skipped).
  const std::vector<const Schema*>& schemas_for_first_effect(
      const Symbol& action_type) const;

  bool operator==(const KnowledgeBase& other) const {
    return signatures_ == other.signatures_ && schemas_ == other.schemas_;
  }

 private:
  std::map<Symbol, TypeSignature> signatures_;
  std::vector<Schema> schemas_;
  std::map<Symbol, std::vector<const Schema*>> first_effect_index_;
  std::vector<const Schema*> empty_;
};

/// Parses KB source text. Throws ParseError with line/column on syntax
/// errors, duplicate signatures, arity mismatches, undeclared names,
/// empty effect lists, or a non-abstract cause type.
KnowledgeBase parse_kb(std::string_view text);

/// Structural checks beyond parsing: unit-production cycles among
/// single-effect schemas, unbindable cause parameters, arity mismatches
/// (for programmatically built KBs), and a warning for effect types that
/// are neither primitive nor the cause of any schema.
std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb);

/// Pretty-prints to DSL text; parse_kb(serialize_kb(kb)) == kb.
std::string serialize_kb(const KnowledgeBase& kb);

}  // namespace planrec

#endif  // PLANREC_KB_HPP

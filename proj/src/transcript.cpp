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

#include "planrec/transcript.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "planrec/errors.hpp"
#include "planrec/sexpr.hpp"

namespace planrec {

namespace {

[[noreturn]] void fail(const Sexpr& at, const std::string& message) {
  throw ParseError(message, at.line, at.col);
}

const std::string& expect_atom(const Sexpr& node, const char* what) {
  if (!node.is_atom()) fail(node, std::string("expected ") + what);
  return node.atom;
}

EnvObject parse_object(const Sexpr& form) {
  if (!form.has_head("object")) fail(form, "expected (object ID (PROP VALUE)*)");
  if (form.items.size() < 2) fail(form, "object needs an id");
  EnvObject obj;
  obj.id = expect_atom(form.items[1], "object id");
  for (std::size_t i = 2; i < form.items.size(); ++i) {
    const Sexpr& pair = form.items[i];
    if (!pair.is_list() || pair.items.size() != 2)
      fail(pair, "expected (PROPERTY VALUE)");
    const std::string& prop = expect_atom(pair.items[0], "property name");
    const std::string& value = expect_atom(pair.items[1], "property value");
    if (!obj.properties.emplace(prop, value).second)
      throw ValidationError("duplicate property " + prop + " on object " +
                            obj.id);
  }
  return obj;
}

DemoStep parse_step(const Sexpr& form) {
  if (form.items.size() != 3)
    fail(form, "expected (step (action ...) (changes ...))");
  const Sexpr& action_form = form.items[1];
  if (!action_form.has_head("action") || action_form.items.size() < 2)
    fail(action_form, "expected (action NAME ARG*)");
  DemoStep step;
  step.action.type = expect_atom(action_form.items[1], "action type");
  for (std::size_t i = 2; i < action_form.items.size(); ++i)
    step.action.args.push_back(expect_atom(action_form.items[i], "argument"));

  const Sexpr& changes_form = form.items[2];
  if (!changes_form.has_head("changes"))
    fail(changes_form, "expected (changes ...)");
  std::set<std::pair<Symbol, Symbol>> seen;
  for (std::size_t i = 1; i < changes_form.items.size(); ++i) {
    const Sexpr& group = changes_form.items[i];
    if (!group.is_list() || group.items.empty())
      fail(group, "expected (OBJECT (PROP VALUE)*)");
    Symbol object_id = expect_atom(group.items[0], "changed object id");
    for (std::size_t j = 1; j < group.items.size(); ++j) {
      const Sexpr& pair = group.items[j];
      if (!pair.is_list() || pair.items.size() != 2)
        fail(pair, "expected (PROPERTY VALUE)");
      const std::string& prop = expect_atom(pair.items[0], "property name");
      const std::string& value = expect_atom(pair.items[1], "property value");
      if (!seen.insert({object_id, prop}).second)
        throw ValidationError("property changed twice in one step: " +
                              object_id + "." + prop);
      step.changes.push_back({object_id, prop, value});
    }
  }
  return step;
}

}  // namespace

Transcript parse_transcript(std::string_view text) {
  std::vector<Sexpr> forms = parse_sexprs(text);
  Transcript transcript;
  if (forms.empty()) throw ValidationError("transcript is missing (init ...)");
  const Sexpr& init = forms.front();
  if (!init.has_head("init"))
    fail(init, "transcript must begin with (init ...)");
  for (std::size_t i = 1; i < init.items.size(); ++i)
    transcript.init.push_back(parse_object(init.items[i]));
  for (std::size_t i = 1; i < forms.size(); ++i) {
    if (!forms[i].has_head("step")) fail(forms[i], "expected (step ...)");
    transcript.steps.push_back(parse_step(forms[i]));
  }
  return transcript;
}

void check_transcript(const Transcript& transcript, const KnowledgeBase& kb) {
  std::set<Symbol> ids;
  for (const EnvObject& obj : transcript.init) {
    if (!ids.insert(obj.id).second)
      throw ValidationError("duplicate object id: " + obj.id);
  }
  for (std::size_t i = 0; i < transcript.steps.size(); ++i) {
    const DemoStep& step = transcript.steps[i];
    const std::string at = " (step " + std::to_string(i + 1) + ")";
    const TypeSignature* sig = kb.signature(step.action.type);
    if (!sig)
      throw ValidationError("undeclared action type: " + step.action.type + at);
    if (sig->kind != TypeKind::primitive)
      throw ValidationError("action type is not primitive: " +
                            step.action.type + at);
    if (static_cast<int>(step.action.args.size()) != sig->arity)
      throw ValidationError("arity mismatch for action " + step.action.type +
                            at);
    for (const ChangeTriple& change : step.changes)
      if (!ids.count(change.object_id))
        throw ValidationError("change references unknown object: " +
                              change.object_id + at);
  }
}

std::string serialize_transcript(const Transcript& transcript) {
  std::ostringstream os;
  os << "(init";
  for (const EnvObject& obj : transcript.init) {
    os << "\n  (object " << obj.id;
    for (const auto& [prop, value] : obj.properties)
      os << " (" << prop << ' ' << value << ')';
    os << ')';
  }
  os << ")\n";
  for (const DemoStep& step : transcript.steps) {
    os << "(step (action " << step.action.type;
    for (const Symbol& arg : step.action.args) os << ' ' << arg;
    os << ") (changes";
    // Group triples by object, preserving first-appearance order.
    std::vector<std::pair<Symbol, std::vector<const ChangeTriple*>>> groups;
    for (const ChangeTriple& change : step.changes) {
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const auto& g) { return g.first == change.object_id; });
      if (it == groups.end()) {
        groups.push_back({change.object_id, {&change}});
      } else {
        it->second.push_back(&change);
      }
    }
    for (const auto& [object_id, triples] : groups) {
      os << " (" << object_id;
      for (const ChangeTriple* t : triples)
        os << " (" << t->prop << ' ' << t->value << ')';
      os << ')';
    }
    os << "))\n";
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  out << content;
}

Transcript load_transcript_file(const std::string& path) {
  return parse_transcript(read_text_file(path));
}

}  // namespace planrec

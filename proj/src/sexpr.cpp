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

#include "planrec/sexpr.hpp"

#include <cctype>

#include "planrec/errors.hpp"

namespace planrec {

bool Sexpr::has_head(std::string_view name) const {
  return is_list() && !items.empty() && items[0].is_atom() &&
         items[0].atom == name;
}

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  char advance() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void skip_trivia() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }
};

bool is_atom_char(char c) {
  if (std::isspace(static_cast<unsigned char>(c))) return false;
  return c != '(' && c != ')' && c != ';';
}

Sexpr read_form(Lexer& lex);

Sexpr read_list(Lexer& lex) {
  Sexpr node;
  node.kind = Sexpr::Kind::list;
  node.line = lex.line;
  node.col = lex.col;
  lex.advance();  // consume '('
  for (;;) {
    lex.skip_trivia();
    if (lex.eof())
      throw ParseError("unterminated list", node.line, node.col);
    if (lex.peek() == ')') {
      lex.advance();
      return node;
    }
    node.items.push_back(read_form(lex));
  }
}

Sexpr read_form(Lexer& lex) {
  lex.skip_trivia();
  if (lex.eof()) throw ParseError("unexpected end of input", lex.line, lex.col);
  char c = lex.peek();
  if (c == '(') return read_list(lex);
  if (c == ')') throw ParseError("unmatched ')'", lex.line, lex.col);
  Sexpr node;
  node.kind = Sexpr::Kind::atom;
  node.line = lex.line;
  node.col = lex.col;
  while (!lex.eof() && is_atom_char(lex.peek())) node.atom += lex.advance();
  return node;
}

}  // namespace

std::vector<Sexpr> parse_sexprs(std::string_view text) {
  Lexer lex{text};
  std::vector<Sexpr> forms;
  for (;;) {
    lex.skip_trivia();
    if (lex.eof()) return forms;
    forms.push_back(read_form(lex));
  }
}

}  // namespace planrec

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

#ifndef PLANREC_SEXPR_HPP
#define PLANREC_SEXPR_HPP

#include <string>
#include <string_view>
#include <vector>

namespace planrec {

// Minimal s-expression reader shared by the knowledge-base DSL, the
// transcript format, and the ground-truth sidecars. Atoms are bare
// symbols (no strings/numbers distinction at this level); `;` starts a
// comment running to end of line.
struct Sexpr {
  enum class Kind { atom, list };

  Kind kind = Kind::list;
  std::string atom;          // valid when kind == atom
  std::vector<Sexpr> items;  // valid when kind == list
  int line = 0;              // 1-based source position of the token/open paren
  int col = 0;

  bool is_atom() const { return kind == Kind::atom; }
  bool is_list() const { return kind == Kind::list; }

  // True when this is a list whose first item is the atom `name`.
  bool has_head(std::string_view name) const;
};

/// Reads every top-level form in `text`. Throws ParseError on
/// unbalanced parens, stray tokens, or bad characters.
std::vector<Sexpr> parse_sexprs(std::string_view text);

}  // namespace planrec

#endif  // PLANREC_SEXPR_HPP

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

#ifndef PLANREC_TRANSCRIPT_HPP
#define PLANREC_TRANSCRIPT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "planrec/engine.hpp"
#include "planrec/kb.hpp"
#include "planrec/worldstate.hpp"

namespace planrec {

// Recorded demonstration: the initial environment followed by one form
// per observed action with the environment changes it caused.
//
//   (init
//     (object drive1 (type drive) (location loc1)))
//   (step (action grasp drive1 left-gripper)
//         (changes (drive1 (location left-gripper))))
struct Transcript {
  std::vector<EnvObject> init;
  std::vector<DemoStep> steps;

  bool operator==(const Transcript&) const = default;
};

/// Parses transcript text. Throws ParseError on malformed syntax and
/// ValidationError on duplicate properties within one object or one
/// change set.
Transcript parse_transcript(std::string_view text);

/// Semantic checks against a knowledge base: every action type declared
/// primitive with matching arity, every changed object present in the
/// initial environment. Throws ValidationError.
void check_transcript(const Transcript& transcript, const KnowledgeBase& kb);

/// Canonical text form; parse_transcript(serialize_transcript(t)) == t.
std::string serialize_transcript(const Transcript& transcript);

Transcript load_transcript_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace planrec

#endif  // PLANREC_TRANSCRIPT_HPP

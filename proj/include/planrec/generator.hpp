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

#ifndef PLANREC_GENERATOR_HPP
#define PLANREC_GENERATOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "planrec/engine.hpp"
#include "planrec/kb.hpp"
#include "planrec/worldstate.hpp"

namespace planrec {

// Synthesizes random, KB-consistent demonstrations with known top-level
// intentions: sample an intention, pick one of its schemas uniformly,
// solve the schema constraints against the simulated environment by
// rejection sampling over the object pool, expand abstract effects
// recursively, and forward-simulate each primitive's environment effects
// through a per-primitive rule table.

// What one primitive action does to the environment. The rule table is
// configuration, not engine knowledge: the inference side only ever sees
// the resulting change records.
struct EffectRule {
  enum class Target {
    arg,               // the object named by argument `target_arg`
    object_with_prop,  // every object whose `match_prop` equals that argument
  };
  enum class Value {
    arg,          // another argument
    literal,      // fixed symbol
    prop_of_arg,  // current property `value_prop` of argument `value_arg`
    flip,         // toggle current value between flip_a and flip_b
  };

  Target target = Target::arg;
  int target_arg = 0;
  Symbol match_prop;

  Symbol prop;  // property to set

  Value value = Value::arg;
  int value_arg = 0;
  Symbol value_literal;
  Symbol value_prop;
  Symbol flip_a, flip_b;
};

struct ObjectPoolSpec {
  std::vector<EnvObject> objects;
  std::vector<Symbol> locations;  // free location symbols
};

struct GenConfig {
  std::uint64_t seed = 1;
  int n_top_level = 1;
  int max_rejections = 100;
  ObjectPoolSpec pool;
  std::map<Symbol, std::vector<EffectRule>> effect_rules;  // by primitive type
};

struct GroundTruthItem {
  Symbol type;
  std::vector<Symbol> args;

  bool operator==(const GroundTruthItem&) const = default;
};

struct GeneratedDemo {
  std::vector<EnvObject> init_env;
  std::vector<DemoStep> steps;
  std::vector<GroundTruthItem> ground_truth;

  bool operator==(const GeneratedDemo&) const = default;
};

/// Deterministic in (kb, cfg). Throws GenerationError (naming the schema)
/// when constraint solving exhausts cfg.max_rejections for one intention,
/// and ValidationError when cfg is unusable (no abstract type has any
/// schema while n_top_level > 0).
GeneratedDemo gen_demo(const KnowledgeBase& kb, const GenConfig& cfg);

/// Pool and effect rules for the stock manipulation domain (grasp, move,
/// release, press over blocks, switches, and grippers) used by the CLI
/// when no explicit configuration is possible.
GenConfig default_gen_config();

/// `(ground-truth (intent NAME arg*)*)` sidecar, one line per intent.
std::string serialize_ground_truth(const std::vector<GroundTruthItem>& items);
std::vector<GroundTruthItem> parse_ground_truth(std::string_view text);

}  // namespace planrec

#endif  // PLANREC_GENERATOR_HPP

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

#ifndef PLANREC_ORACLE_HPP
#define PLANREC_ORACLE_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "planrec/engine.hpp"
#include "planrec/kb.hpp"
#include "planrec/timeline.hpp"
#include "planrec/worldstate.hpp"

namespace planrec {

// Exhaustive ground truth for desk-scale equivalence testing. Derives
// every (type, arguments, end) conclusion reachable from every start
// position with a memoized chart (one fixpoint per position, so shared
// sub-derivations are computed once), then enumerates top-level covers
// by walking the chart. Not a production inference path.

struct Cover {
  std::vector<CoverItem> intents;

  int cardinality() const { return static_cast<int>(intents.size()); }
  bool operator==(const Cover&) const = default;
};

struct OracleOptions {
  int max_actions = 20;          // enumeration precondition guard
  std::size_t cover_limit = 100000;
};

struct CoverEnumeration {
  std::vector<Cover> covers;
  bool truncated = false;  // hit cover_limit; covers is a partial list
};

/// Everything derivable for one (type, start position): end position and
/// concrete cause arguments.
struct ChartCompletion {
  int end = 0;
  std::vector<Symbol> args;

  auto operator<=>(const ChartCompletion&) const = default;
};

/// Derivation chart over a primitive action sequence. Primitives appear
/// as their own single-step completions, so a chart cell lists every
/// admissible cover element starting at that position.
class DerivationChart {
 public:
  DerivationChart(const KnowledgeBase& kb, const std::vector<DemoStep>& demo,
                  const std::vector<EnvObject>& init_env);

  int length() const { return length_; }
  const std::set<ChartCompletion>& completions(const Symbol& type,
                                               int start) const;
  /// Types with at least one completion at `start`, in symbol order.
  std::vector<Symbol> types_at(int start) const;

 private:
  void close_position(int start);
  void match_sequence(const Schema& schema, std::size_t effect_index, int pos,
                      const std::map<Symbol, Symbol>& bindings, int start,
                      bool& changed);
  bool complete_schema(const Schema& schema, int start, int end,
                       std::map<Symbol, Symbol> bindings);

  const KnowledgeBase& kb_;
  int length_;
  std::vector<ActionSpec> actions_;
  WorldState world_;
  // cells_[start][type] -> completions
  std::vector<std::map<Symbol, std::set<ChartCompletion>>> cells_;
  std::set<ChartCompletion> empty_;
};

/// All top-level covers (up to options.cover_limit). Requires the demo
/// length to be within options.max_actions; throws ValidationError
/// otherwise (the exhaustive walk is a desk-scale tool).
CoverEnumeration enumerate_covers(const KnowledgeBase& kb,
                                  const std::vector<DemoStep>& demo,
                                  const std::vector<EnvObject>& init_env,
                                  const OracleOptions& options = {});

/// Minimum cover cardinality, computed by dynamic programming over the
/// chart (identical to minimizing over enumerate_covers, but immune to
/// the enumeration limit). nullopt when no cover exists.
std::optional<int> min_cover_cardinality(const KnowledgeBase& kb,
                                         const std::vector<DemoStep>& demo,
                                         const std::vector<EnvObject>& init_env,
                                         const OracleOptions& options = {});

/// True iff the items tile [0, length] without gaps or overlaps and every
/// item is derivable over its span (primitives must match the observed
/// action exactly). No length bound.
bool validate_cover(const KnowledgeBase& kb, const std::vector<DemoStep>& demo,
                    const std::vector<EnvObject>& init_env,
                    const std::vector<CoverItem>& cover);

inline bool validate_cover(const KnowledgeBase& kb,
                           const std::vector<DemoStep>& demo,
                           const std::vector<EnvObject>& init_env,
                           const Explanation& explanation) {
  return validate_cover(kb, demo, init_env, explanation.intents);
}

}  // namespace planrec

#endif  // PLANREC_ORACLE_HPP

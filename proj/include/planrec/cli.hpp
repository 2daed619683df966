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

#ifndef PLANREC_CLI_HPP
#define PLANREC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace planrec {

// Command implementations behind the `planrec` binary, separated from
// argument parsing so tests can drive them directly.
//
// Exit codes, shared by every command:
//   0  success
//   1  usage error
//   2  parse or validation error (diagnostics on the error stream)
//   3  inference or generation error
//   4  --check mismatch against the oracle

struct ExplainArgs {
  std::string kb_path;
  std::string demo_path;
  std::string metrics_dir;  // empty: no metrics output
  bool check = false;
  std::string format = "sexp";
};

struct GenDemoArgs {
  std::string kb_path;
  std::uint64_t seed = 1;
  int n_top_level = 1;
  std::string out_path;  // sidecar written to out_path + ".truth"
};

struct BenchArgs {
  std::string kb_path;
  int min_length = 5;
  int max_length = 40;
  int step = 5;
  std::uint64_t seed = 1;
  int runs_per_length = 5;
  std::string out_dir;
};

struct BenchRow {
  int length = 0;
  std::uint64_t seed = 0;
  std::uint64_t total_created = 0;
  std::uint64_t peak_living = 0;
  bool transient_ok = false;  // peak/total within kTransientLivingRatioCap
  std::uint64_t ticks = 0;    // total memory events; deterministic runtime proxy
  double wall_ms = 0.0;
};

int cmd_explain(const ExplainArgs& args, std::ostream& out, std::ostream& err);
int cmd_validate_kb(const std::string& kb_path, std::ostream& out,
                    std::ostream& err);
int cmd_gen_demo(const GenDemoArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

/// The measurement loop behind cmd_bench: demos are generated to each
/// target length (truncating a longer generated stream), run with
/// metrics, and summarized one row per (length, seed). When `curve_dir`
/// is non-empty the per-run living curves are written there.
std::vector<BenchRow> run_bench(const BenchArgs& args,
                                const std::string& curve_dir);

}  // namespace planrec

#endif  // PLANREC_CLI_HPP

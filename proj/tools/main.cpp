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

#include <iostream>

#include "CLI11.hpp"
#include "planrec/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "planrec: explains action transcripts as sequences of high-level "
      "intentions using a cause-effect knowledge base"};
  app.require_subcommand(1);

  planrec::ExplainArgs explain_args;
  CLI::App* explain =
      app.add_subcommand("explain", "Infer an explanation for a transcript");
  explain->add_option("--kb", explain_args.kb_path, "Knowledge base file")
      ->required();
  explain->add_option("--demo", explain_args.demo_path, "Transcript file")
      ->required();
  explain->add_option("--metrics", explain_args.metrics_dir,
                      "Directory for memory-event CSVs");
  explain->add_flag("--check", explain_args.check,
                    "Cross-check the result against the brute-force oracle");
  explain->add_option("--format", explain_args.format,
                      "Output format (sexp)");

  std::string validate_kb_path;
  CLI::App* validate =
      app.add_subcommand("validate-kb", "Check a knowledge base");
  validate->add_option("--kb", validate_kb_path, "Knowledge base file")
      ->required();

  planrec::GenDemoArgs gen_args;
  CLI::App* gen =
      app.add_subcommand("gen-demo", "Synthesize a random demonstration");
  gen->add_option("--kb", gen_args.kb_path, "Knowledge base file")->required();
  gen->add_option("--seed", gen_args.seed, "Random seed");
  gen->add_option("--n-top", gen_args.n_top_level,
                  "Number of top-level intentions");
  gen->add_option("--out", gen_args.out_path,
                  "Transcript output path (+.truth sidecar)")
      ->required();

  planrec::BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "Measure memory events across demonstration lengths");
  bench->add_option("--kb", bench_args.kb_path, "Knowledge base file")
      ->required();
  bench->add_option("--min", bench_args.min_length, "Smallest demo length");
  bench->add_option("--max", bench_args.max_length, "Largest demo length");
  bench->add_option("--step", bench_args.step, "Length increment");
  bench->add_option("--seed", bench_args.seed, "Base random seed");
  bench->add_option("--runs", bench_args.runs_per_length, "Seeds per length");
  bench->add_option("--out", bench_args.out_dir, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help exits 0, any parse problem is usage
  }

  if (explain->parsed())
    return planrec::cmd_explain(explain_args, std::cout, std::cerr);
  if (validate->parsed())
    return planrec::cmd_validate_kb(validate_kb_path, std::cout, std::cerr);
  if (gen->parsed()) return planrec::cmd_gen_demo(gen_args, std::cout, std::cerr);
  if (bench->parsed()) return planrec::cmd_bench(bench_args, std::cout, std::cerr);
  return 1;
}

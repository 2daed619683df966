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

#include "planrec/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "planrec/engine.hpp"
#include "planrec/errors.hpp"
#include "planrec/generator.hpp"
#include "planrec/kb.hpp"
#include "planrec/metrics.hpp"
#include "planrec/oracle.hpp"
#include "planrec/transcript.hpp"

namespace planrec {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInference = 3;
constexpr int kExitCheckMismatch = 4;
constexpr int kOracleCheckLimit = 20;

KnowledgeBase load_kb_checked(const std::string& path, std::ostream& err) {
  KnowledgeBase kb = parse_kb(read_text_file(path));
  bool bad = false;
  for (const Diagnostic& d : validate_kb(kb)) {
    if (d.severity == Diagnostic::Severity::error) {
      err << path << ": error: " << d.message << " (schema " << d.schema_id
          << ")\n";
      bad = true;
    }
  }
  if (bad) throw ValidationError("knowledge base failed validation: " + path);
  return kb;
}

// Maps thrown errors onto the exit-code contract.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InferenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInference;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInference;
  }
}

void write_metrics_files(const MetricsRecorder& recorder,
                         const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_curve_csv(living_curve(recorder.events()),
                  (std::filesystem::path(dir) / "living_curve.csv").string());
  write_lifespans_csv(lifespans(recorder.events()),
                      (std::filesystem::path(dir) / "lifespans.csv").string());
}

}  // namespace

int cmd_explain(const ExplainArgs& args, std::ostream& out, std::ostream& err) {
  if (args.format != "sexp") {
    err << "error: unsupported --format value: " << args.format << "\n";
    return kExitUsage;
  }
  return guarded(err, [&]() {
    KnowledgeBase kb = load_kb_checked(args.kb_path, err);
    Transcript transcript = load_transcript_file(args.demo_path);
    check_transcript(transcript, kb);

    if (args.check &&
        static_cast<int>(transcript.steps.size()) > kOracleCheckLimit) {
      err << "error: --check supports demos of at most " << kOracleCheckLimit
          << " actions (got " << transcript.steps.size() << ")\n";
      return kExitUsage;
    }

    MetricsRecorder recorder;
    MetricsRecorder* metrics = args.metrics_dir.empty() ? nullptr : &recorder;
    Explanation explanation =
        explain(kb, transcript.steps, transcript.init, metrics);
    if (metrics) write_metrics_files(recorder, args.metrics_dir);

    if (args.check) {
      if (!validate_cover(kb, transcript.steps, transcript.init, explanation)) {
        err << "check failed: explanation is not a valid cover\n";
        return kExitCheckMismatch;
      }
      OracleOptions oracle_options;
      oracle_options.max_actions = kOracleCheckLimit;
      std::optional<int> minimum = min_cover_cardinality(
          kb, transcript.steps, transcript.init, oracle_options);
      int cardinality = static_cast<int>(explanation.intents.size());
      if (!minimum || *minimum != cardinality) {
        err << "check failed: explanation cardinality " << cardinality
            << " differs from oracle minimum "
            << (minimum ? std::to_string(*minimum) : "<none>") << "\n";
        return kExitCheckMismatch;
      }
    }

    out << serialize_explanation(explanation) << "\n";
    return kExitOk;
  });
}

int cmd_validate_kb(const std::string& kb_path, std::ostream& out,
                    std::ostream& err) {
  return guarded(err, [&]() {
    KnowledgeBase kb = parse_kb(read_text_file(kb_path));
    bool has_error = false;
    for (const Diagnostic& d : validate_kb(kb)) {
      bool is_error = d.severity == Diagnostic::Severity::error;
      has_error |= is_error;
      out << (is_error ? "error: " : "warning: ") << d.message << " (schema "
          << d.schema_id << ")\n";
    }
    return has_error ? kExitParse : kExitOk;
  });
}

int cmd_gen_demo(const GenDemoArgs& args, std::ostream& out,
                 std::ostream& err) {
  (void)out;
  if (args.n_top_level < 0) {
    err << "error: --n-top must be non-negative\n";
    return kExitUsage;
  }
  return guarded(err, [&]() {
    KnowledgeBase kb = load_kb_checked(args.kb_path, err);
    GenConfig cfg = default_gen_config();
    cfg.seed = args.seed;
    cfg.n_top_level = args.n_top_level;
    GeneratedDemo demo = gen_demo(kb, cfg);
    Transcript transcript{demo.init_env, demo.steps};
    write_text_file(args.out_path, serialize_transcript(transcript));
    write_text_file(args.out_path + ".truth",
                    serialize_ground_truth(demo.ground_truth));
    return kExitOk;
  });
}

namespace {

// Deterministically builds a demo of exactly `length` actions: grow the
// intention count until the generated stream is long enough, then keep
// the prefix (a prefix of a consistent stream is itself consistent).
std::vector<DemoStep> demo_of_length(const KnowledgeBase& kb,
                                     const GenConfig& base, std::uint64_t seed,
                                     int length) {
  GenConfig cfg = base;
  cfg.seed = seed;
  for (int n = std::max(1, length / 3);; ++n) {
    cfg.n_top_level = n;
    GeneratedDemo demo = gen_demo(kb, cfg);
    if (static_cast<int>(demo.steps.size()) >= length) {
      demo.steps.resize(length);
      return demo.steps;
    }
    if (n > length)
      throw GenerationError("cannot reach demo length " +
                            std::to_string(length));
  }
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchArgs& args,
                                const std::string& curve_dir) {
  KnowledgeBase kb = parse_kb(read_text_file(args.kb_path));
  GenConfig base = default_gen_config();
  std::vector<BenchRow> rows;
  for (int length = args.min_length; length <= args.max_length;
       length += args.step) {
    for (int run = 0; run < args.runs_per_length; ++run) {
      std::uint64_t seed = args.seed + static_cast<std::uint64_t>(run);
      std::vector<DemoStep> steps = demo_of_length(kb, base, seed, length);

      MetricsRecorder recorder;
      auto t0 = std::chrono::steady_clock::now();
      explain(kb, steps, base.pool.objects, &recorder);
      auto t1 = std::chrono::steady_clock::now();

      std::vector<CurvePoint> curve = living_curve(recorder.events());
      BenchRow row;
      row.length = length;
      row.seed = seed;
      row.total_created = recorder.total_created();
      row.peak_living = peak_living(curve);
      row.transient_ok =
          static_cast<double>(row.peak_living) <=
          kTransientLivingRatioCap * static_cast<double>(row.total_created);
      row.ticks = recorder.events().size();
      row.wall_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      rows.push_back(row);

      if (!curve_dir.empty()) {
        std::string name = "curve_len" + std::to_string(length) + "_seed" +
                           std::to_string(seed) + ".csv";
        write_curve_csv(curve,
                        (std::filesystem::path(curve_dir) / name).string());
      }
    }
  }
  return rows;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  (void)out;
  if (args.min_length <= 0 || args.max_length < args.min_length ||
      args.step <= 0 || args.runs_per_length <= 0) {
    err << "error: bad bench range\n";
    return kExitUsage;
  }
  return guarded(err, [&]() {
    std::filesystem::create_directories(args.out_dir);
    std::vector<BenchRow> rows = run_bench(args, args.out_dir);

    // wall_ms stays in the last column: it is the one nondeterministic
    // field, so consumers diffing runs can strip it cheaply.
    std::ostringstream csv;
    csv << "length,seed,total_created,peak_living,transient_ok,ticks,wall_ms\n";
    for (const BenchRow& row : rows)
      csv << row.length << "," << row.seed << "," << row.total_created << ","
          << row.peak_living << "," << (row.transient_ok ? 1 : 0) << ","
          << row.ticks << "," << row.wall_ms << "\n";
    write_text_file(
        (std::filesystem::path(args.out_dir) / "summary.csv").string(),
        csv.str());
    return kExitOk;
  });
}

}  // namespace planrec

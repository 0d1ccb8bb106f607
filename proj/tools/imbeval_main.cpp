// imbeval -- imbalance-aware evaluation of binary classifier scores.
//
// Subcommands:
//   evaluate   per-run + aggregate metrics from prediction CSVs
//   sweep      synthetic prevalence sweep (CSV + JSON)
//   calibrate  isotonic calibration map for one file/task
//   aggregate  merge previously emitted per-run JSON documents

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "imbeval/calibration.hpp"
#include "imbeval/csv.hpp"
#include "imbeval/evaluate.hpp"
#include "imbeval/report.hpp"
#include "imbeval/synth.hpp"
#include "imbeval/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;  // usage / schema / data errors
constexpr int kExitIo = 2;     // file system errors

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw imbeval::IoError("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out) {
    throw imbeval::IoError("failed writing '" + path.string() + "'");
  }
}

struct EvaluateArgs {
  std::vector<std::string> test_files;
  std::vector<std::string> tuning_files;
  std::vector<std::string> tasks;
  std::string pr_estimator = "trapezoid";
  int grid_size = 100;
  bool grid_passed = false;
  std::string output = "imbeval-out";
  std::string format = "both";
};

int cmd_evaluate(const EvaluateArgs& args) {
  imbeval::EvaluationConfig config;
  for (const auto& f : args.test_files) config.test_files.emplace_back(f);
  for (const auto& f : args.tuning_files) config.tuning_files.emplace_back(f);
  config.tasks = args.tasks;
  config.pr_estimator = args.pr_estimator == "step" ? imbeval::PrEstimator::Step
                                                    : imbeval::PrEstimator::Trapezoid;
  config.grid_size = args.grid_size;
  config.grid_exports = args.grid_passed;
  config.output_dir = args.output;
  config.format = args.format == "json"       ? imbeval::ReportFormat::Json
                  : args.format == "markdown" ? imbeval::ReportFormat::Markdown
                                              : imbeval::ReportFormat::Both;

  if (config.tuning_files.empty()) {
    std::cerr << "warning: no tuning files given; operating points are selected on the "
                 "test split itself (recorded as \"test-in-sample\" in metadata)\n";
  }

  const imbeval::EvaluationResult result = imbeval::run_evaluation(config);
  std::cout << "evaluated " << result.runs.size() << " run(s), "
            << result.aggregate.tasks.size() << " task(s); wrote "
            << result.files_written.size() << " file(s) under " << args.output << "\n";
  return kExitOk;
}

struct SweepArgs {
  std::string family;
  double separation = 0.0;
  bool separation_passed = false;
  double value = 0.0;
  bool value_passed = false;
  std::vector<double> prevalences;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output;
  std::string json_output;
};

int cmd_sweep(const SweepArgs& args) {
  imbeval::SweepRequest request;
  if (args.family == "binormal") {
    request.family = imbeval::GeneratorFamily::Binormal;
    if (!args.separation_passed) {
      std::cerr << "error: --family binormal requires --d\n";
      return kExitUsage;
    }
    request.separation = args.separation;
  } else if (args.family == "constant") {
    request.family = imbeval::GeneratorFamily::Constant;
    if (!args.value_passed) {
      std::cerr << "error: --family constant requires --value\n";
      return kExitUsage;
    }
    request.value = args.value;
  } else {
    request.family = imbeval::GeneratorFamily::UniformRandom;
  }
  request.prevalences = args.prevalences;
  request.n = args.n;
  request.seed = args.seed;
  request.threads = args.threads;

  const imbeval::SweepTable table = imbeval::prevalence_sweep(request);
  write_file(args.output, imbeval::sweep_to_csv(table));

  // generator metadata always rides along as a JSON sidecar
  fs::path json_path(args.json_output);
  if (json_path.empty()) {
    json_path = fs::path(args.output).replace_extension(".json");
    if (json_path == fs::path(args.output)) json_path += ".json";
  }
  write_file(json_path, imbeval::sweep_to_json(table).dump(2) + "\n");
  std::cout << "swept " << table.rows.size() << " prevalence(s) -> " << args.output << "\n";
  return kExitOk;
}

struct CalibrateArgs {
  std::string input;
  std::string task;
  std::string output;
};

int cmd_calibrate(const CalibrateArgs& args) {
  const imbeval::RunData run = imbeval::parse_predictions_file(args.input);
  auto it = run.tasks.find(args.task);
  if (it == run.tasks.end()) {
    throw imbeval::SchemaError("task '" + args.task + "' not present in '" + args.input + "'");
  }
  const imbeval::TaskDataset& ds = it->second;
  const imbeval::CalibrationMap map = imbeval::pav_calibrate(ds);
  const imbeval::CalibrationSplit split = imbeval::calibration_refinement(ds);

  json j = imbeval::calibration_map_to_json(map);
  j["schema_version"] = imbeval::kReportSchemaVersion;
  j["task"] = args.task;
  j["n"] = ds.n();
  j["calibration_loss"] = split.calibration_loss;
  j["refinement_loss"] = split.refinement_loss;
  write_file(args.output, j.dump(2) + "\n");
  std::cout << "calibrated task '" << args.task << "' (" << map.blocks.size()
            << " block(s)) -> " << args.output << "\n";
  return kExitOk;
}

struct AggregateArgs {
  std::vector<std::string> inputs;
  std::string output = "imbeval-out";
  std::string format = "both";
};

int cmd_aggregate(const AggregateArgs& args) {
  std::vector<imbeval::RunMetrics> runs;
  imbeval::ReportMetadata meta;
  std::string pr_estimator;
  std::string threshold_source;
  for (const auto& file : args.inputs) {
    std::ifstream in(file);
    if (!in) {
      throw imbeval::IoError("cannot open run document '" + file + "'");
    }
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw imbeval::SchemaError("run document '" + file + "' is not valid JSON: " + e.what());
    }
    runs.push_back(imbeval::run_metrics_from_json(j));
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
      if (runs[i].run_id == runs.back().run_id) {
        throw imbeval::SchemaError("duplicate run_id '" + runs.back().run_id +
                                   "' across input documents");
      }
    }
    if (j.contains("metadata") && j["metadata"].is_object()) {
      const json& m = j["metadata"];
      const std::string est = m.value("pr_estimator", "trapezoid");
      if (pr_estimator.empty()) {
        pr_estimator = est;
      } else if (pr_estimator != est) {
        throw imbeval::SchemaError("run documents disagree on pr_estimator");
      }
      const std::string src = m.value("threshold_source", "tuning");
      if (threshold_source.empty()) {
        threshold_source = src;
      } else if (threshold_source != src) {
        throw imbeval::SchemaError("run documents disagree on threshold_source");
      }
    }
  }
  meta.pr_estimator =
      pr_estimator == "step" ? imbeval::PrEstimator::Step : imbeval::PrEstimator::Trapezoid;
  meta.threshold_source = threshold_source == "test-in-sample"
                              ? imbeval::ThresholdSource::TestInSample
                              : imbeval::ThresholdSource::Tuning;

  const imbeval::AggregateReport aggregate = imbeval::summarize_runs(runs);
  const fs::path out_dir(args.output);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (args.format != "markdown") {
    write_file(out_dir / "report.json",
               imbeval::report_to_json(runs, aggregate, meta).dump(2) + "\n");
  }
  if (args.format != "json") {
    write_file(out_dir / "report.md", imbeval::report_to_markdown(aggregate, meta));
  }
  std::cout << "aggregated " << runs.size() << " run(s) -> " << args.output << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imbalance-aware evaluation of binary classifier scores"};
  app.set_version_flag("--version", std::string(imbeval::kToolName) + " " +
                                        imbeval::kToolVersion);
  app.require_subcommand(1);

  EvaluateArgs eval_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Evaluate prediction files (one per run) and aggregate across runs");
  evaluate->add_option("--test", eval_args.test_files, "Test prediction CSV, one per run")
      ->required();
  evaluate->add_option("--tuning", eval_args.tuning_files,
                       "Tuning prediction CSV, parallel to --test (optional)");
  evaluate->add_option("--tasks", eval_args.tasks, "Only evaluate these tasks");
  evaluate->add_option("--pr-estimator", eval_args.pr_estimator, "PR area estimator")
      ->check(CLI::IsMember({"trapezoid", "step"}))
      ->capture_default_str();
  CLI::Option* grid_opt =
      evaluate
          ->add_option("--grid", eval_args.grid_size,
                       "Grid intervals for mean curves; also resamples per-run curve exports")
          ->check(CLI::PositiveNumber);
  evaluate->add_option("--output", eval_args.output, "Output directory")
      ->capture_default_str();
  evaluate->add_option("--format", eval_args.format, "Report format")
      ->check(CLI::IsMember({"json", "markdown", "both"}))
      ->capture_default_str();

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Synthetic prevalence sweep over a fixed score distribution");
  sweep->add_option("--family", sweep_args.family, "Score generator family")
      ->check(CLI::IsMember({"uniform", "binormal", "constant"}))
      ->required();
  CLI::Option* d_opt =
      sweep->add_option("--d", sweep_args.separation, "Binormal class separation");
  CLI::Option* value_opt =
      sweep->add_option("--value", sweep_args.value, "Constant score value");
  sweep->add_option("--prevalences", sweep_args.prevalences, "Comma-separated prevalences")
      ->required()
      ->delimiter(',');
  sweep->add_option("--n", sweep_args.n, "Samples per sweep cell")->required();
  sweep->add_option("--seed", sweep_args.seed, "Base seed; cell i uses seed + i")->required();
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (results are identical)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--output", sweep_args.output, "Sweep CSV path")->required();
  sweep->add_option("--json", sweep_args.json_output,
                    "JSON sweep document path (default: CSV path with .json)");

  CalibrateArgs cal_args;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Emit the isotonic calibration map for one file/task");
  calibrate->add_option("--input", cal_args.input, "Prediction CSV")->required();
  calibrate->add_option("--task", cal_args.task, "Task name")->required();
  calibrate->add_option("--output", cal_args.output, "Calibration JSON path")->required();

  AggregateArgs agg_args;
  CLI::App* aggregate =
      app.add_subcommand("aggregate", "Merge previously emitted per-run JSON documents");
  aggregate->add_option("--inputs", agg_args.inputs, "runs/<run_id>.json documents")
      ->required();
  aggregate->add_option("--output", agg_args.output, "Output directory")
      ->capture_default_str();
  aggregate->add_option("--format", agg_args.format, "Report format")
      ->check(CLI::IsMember({"json", "markdown", "both"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (evaluate->parsed()) {
      eval_args.grid_passed = grid_opt->count() > 0;
      return cmd_evaluate(eval_args);
    }
    if (sweep->parsed()) {
      sweep_args.separation_passed = d_opt->count() > 0;
      sweep_args.value_passed = value_opt->count() > 0;
      return cmd_sweep(sweep_args);
    }
    if (calibrate->parsed()) return cmd_calibrate(cal_args);
    if (aggregate->parsed()) return cmd_aggregate(agg_args);
  } catch (const imbeval::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

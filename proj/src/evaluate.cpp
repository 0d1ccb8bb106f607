#include "imbeval/evaluate.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "imbeval/brier.hpp"
#include "imbeval/calibration.hpp"
#include "imbeval/thresholds.hpp"

namespace imbeval {

namespace {

std::string sanitize_filename(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out.empty() ? "_" : out;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content,
                     std::vector<std::filesystem::path>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
  written.push_back(path);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

TaskMetrics evaluate_task(const TaskDataset& test, const TaskDataset* tuning,
                          PrEstimator pr_estimator, Curve* roc_out, Curve* pr_out) {
  TaskMetrics m;

  if (test.n() > 0) {
    m.prevalence = prevalence(test);
  }

  try {
    Curve roc = roc_curve(test);
    m.auc_roc = auc(roc);
    if (roc_out) *roc_out = std::move(roc);
  } catch (const UndefinedMetricError&) {
  }

  try {
    Curve pr = pr_curve(test);
    m.auc_pr = pr_estimator == PrEstimator::Trapezoid ? auc(pr) : auc_pr_step(test);
    if (pr_out) *pr_out = std::move(pr);
  } catch (const UndefinedMetricError&) {
  }

  try {
    const OperatingPoint op = select_threshold_max_f1(tuning ? *tuning : test);
    m.threshold = op.threshold;
    m.tuning_f1 = op.tuning_f1;
    const PointMetrics pm = point_metrics(confusion_at(test, op.threshold));
    m.recall = pm.recall;
    m.specificity = pm.specificity;
    m.precision = pm.precision;
    m.f1 = pm.f1;
  } catch (const UndefinedMetricError&) {
  }

  if (test.n() > 0) {
    const BrierBundle b = stratified_brier(test);
    m.brier = b.brier;
    m.brier_pos = b.brier_pos;
    m.brier_neg = b.brier_neg;
    m.balanced_brier = b.balanced;
    const CalibrationSplit split = calibration_refinement(test);
    m.calibration_loss = split.calibration_loss;
    m.refinement_loss = split.refinement_loss;
  }
  return m;
}

EvaluationResult run_evaluation(const EvaluationConfig& config) {
  if (config.test_files.empty()) {
    throw SchemaError("at least one test file is required");
  }
  if (!config.tuning_files.empty() && config.tuning_files.size() != config.test_files.size()) {
    throw SchemaError("tuning file list must parallel the test file list (" +
                      std::to_string(config.tuning_files.size()) + " vs " +
                      std::to_string(config.test_files.size()) + ")");
  }
  if (config.grid_size < 1) {
    throw SchemaError("grid size must be at least 1");
  }

  const bool have_tuning = !config.tuning_files.empty();

  std::vector<RunData> test_runs;
  std::vector<RunData> tuning_runs;
  std::set<std::string> used_ids;
  for (std::size_t i = 0; i < config.test_files.size(); ++i) {
    RunData run = parse_predictions_file(config.test_files[i], config.schema);
    while (!used_ids.insert(run.run_id).second) {
      run.run_id += "." + std::to_string(i);  // same stem twice
    }
    test_runs.push_back(std::move(run));
    if (have_tuning) {
      tuning_runs.push_back(parse_predictions_file(config.tuning_files[i], config.schema,
                                                   test_runs.back().run_id + ".tuning"));
    }
  }

  std::set<std::string> task_names;
  for (const RunData& run : test_runs) {
    for (const auto& [name, ds] : run.tasks) task_names.insert(name);
  }
  if (!config.tasks.empty()) {
    std::set<std::string> filter(config.tasks.begin(), config.tasks.end());
    std::set<std::string> selected;
    for (const std::string& name : task_names) {
      if (filter.count(name)) selected.insert(name);
    }
    if (selected.empty()) {
      throw SchemaError("none of the requested tasks appear in the test files");
    }
    task_names = std::move(selected);
  }

  EvaluationResult result;
  std::vector<std::map<std::string, Curve>> run_rocs(test_runs.size());
  std::vector<std::map<std::string, Curve>> run_prs(test_runs.size());

  for (std::size_t r = 0; r < test_runs.size(); ++r) {
    RunMetrics metrics;
    metrics.run_id = test_runs[r].run_id;
    for (const std::string& task : task_names) {
      auto test_it = test_runs[r].tasks.find(task);
      if (test_it == test_runs[r].tasks.end()) continue;

      const TaskDataset* tuning = nullptr;
      if (have_tuning) {
        auto tuning_it = tuning_runs[r].tasks.find(task);
        if (tuning_it != tuning_runs[r].tasks.end()) tuning = &tuning_it->second;
      }
      Curve roc, pr;
      TaskMetrics tm = evaluate_task(test_it->second, tuning, config.pr_estimator, &roc, &pr);
      if (have_tuning && tuning == nullptr) {
        // a task absent from the tuning split gets no operating point
        // rather than a silent in-sample fallback
        tm.threshold.reset();
        tm.tuning_f1.reset();
        tm.recall.reset();
        tm.specificity.reset();
        tm.precision.reset();
        tm.f1.reset();
      }
      if (tm.auc_roc) run_rocs[r].emplace(task, std::move(roc));
      if (tm.auc_pr) run_prs[r].emplace(task, std::move(pr));
      metrics.tasks.emplace(task, tm);
    }
    result.runs.push_back(std::move(metrics));
  }

  result.aggregate = summarize_runs(result.runs);

  ReportMetadata meta;
  meta.pr_estimator = config.pr_estimator;
  meta.threshold_source = have_tuning ? ThresholdSource::Tuning : ThresholdSource::TestInSample;
  meta.grid_size = config.grid_size;
  if (!config.tasks.empty()) meta.task_filter = config.tasks;

  result.report = report_to_json(result.runs, result.aggregate, meta);

  // --- output tree ---
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.output_dir / "runs", ec);
  fs::create_directories(config.output_dir / "curves" / "mean", ec);
  if (ec) {
    throw IoError("cannot create output directory '" + config.output_dir.string() + "'");
  }

  if (config.format != ReportFormat::Markdown) {
    write_text_file(config.output_dir / "report.json", dump(result.report),
                    result.files_written);
  }
  if (config.format != ReportFormat::Json) {
    write_text_file(config.output_dir / "report.md",
                    report_to_markdown(result.aggregate, meta), result.files_written);
  }
  for (const RunMetrics& run : result.runs) {
    write_text_file(config.output_dir / "runs" / (sanitize_filename(run.run_id) + ".json"),
                    dump(run_metrics_to_json(run, meta)), result.files_written);
  }

  // per-run curves, at raw resolution unless grid exports were requested
  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    const RunMetrics& run = result.runs[r];
    const fs::path run_dir = config.output_dir / "curves" / "runs" /
                             sanitize_filename(run.run_id);
    fs::create_directories(run_dir, ec);
    for (const bool is_roc : {true, false}) {
      for (const auto& [task, curve] : is_roc ? run_rocs[r] : run_prs[r]) {
        const auto& tm = run.tasks.at(task);
        const Curve exported =
            config.grid_exports ? mean_curve({curve}, config.grid_size) : curve;
        write_text_file(run_dir / (sanitize_filename(task) + (is_roc ? ".roc" : ".pr") + ".json"),
                        dump(curve_to_json(exported, is_roc ? tm.auc_roc : tm.auc_pr)),
                        result.files_written);
      }
    }
  }

  // across-run mean curves; their headline area is the mean of per-run areas
  auto summary_mean = [&](const std::string& task, const char* metric) {
    for (const TaskSummary& ts : result.aggregate.tasks) {
      if (ts.task == task) return ts.metric(metric).mean;
    }
    return std::optional<double>{};
  };
  for (const std::string& task : task_names) {
    for (const bool is_roc : {true, false}) {
      std::vector<Curve> curves;
      for (std::size_t r = 0; r < result.runs.size(); ++r) {
        const auto& per_run = is_roc ? run_rocs[r] : run_prs[r];
        auto it = per_run.find(task);
        if (it != per_run.end()) curves.push_back(it->second);
      }
      if (curves.empty()) continue;
      write_text_file(config.output_dir / "curves" / "mean" /
                          (sanitize_filename(task) + (is_roc ? ".roc" : ".pr") + ".json"),
                      dump(curve_to_json(mean_curve(curves, config.grid_size),
                                         summary_mean(task, is_roc ? "auc_roc" : "auc_pr"))),
                      result.files_written);
    }
  }

  return result;
}

}  // namespace imbeval

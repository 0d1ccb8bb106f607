#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "imbeval/aggregate.hpp"
#include "imbeval/csv.hpp"
#include "imbeval/report.hpp"

namespace imbeval {

enum class ReportFormat { Json, Markdown, Both };

struct EvaluationConfig {
  std::vector<std::filesystem::path> test_files;    // one per run
  std::vector<std::filesystem::path> tuning_files;  // empty, or parallel to test_files
  std::vector<std::string> tasks;                   // empty = every task found
  PrEstimator pr_estimator = PrEstimator::Trapezoid;
  int grid_size = 100;
  bool grid_exports = false;  // resample per-run curve exports onto the grid
  std::filesystem::path output_dir;
  ReportFormat format = ReportFormat::Both;
  PredictionSchema schema;
};

struct EvaluationResult {
  std::vector<RunMetrics> runs;
  AggregateReport aggregate;
  nlohmann::json report;
  std::vector<std::filesystem::path> files_written;
};

// Full evaluation protocol: per run, thresholds are chosen on the tuning
// split (or on the test split itself when none is given -- recorded as
// "test-in-sample" in metadata) and every metric is measured on the test
// split. Writes the aggregate report (JSON and/or Markdown), one
// runs/<run_id>.json per run, and per-task curve files plus across-run
// mean curves under curves/. Per-task undefined metrics are reported as
// "undefined" cells, never raised.
EvaluationResult run_evaluation(const EvaluationConfig& config);

// Metrics of one test dataset; tuning may be null (threshold picked on
// test) and curve outputs may be null when the caller does not need them.
TaskMetrics evaluate_task(const TaskDataset& test, const TaskDataset* tuning,
                          PrEstimator pr_estimator, Curve* roc_out = nullptr,
                          Curve* pr_out = nullptr);

}  // namespace imbeval

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "imbeval/aggregate.hpp"
#include "imbeval/calibration.hpp"
#include "imbeval/curves.hpp"
#include "imbeval/synth.hpp"

namespace imbeval {

// Report cells are either a number or the literal string "undefined" --
// never null, never a fabricated 0.
nlohmann::json metric_cell(const std::optional<double>& value);

enum class PrEstimator { Trapezoid, Step };
enum class ThresholdSource { Tuning, TestInSample };

std::string to_string(PrEstimator e);
std::string to_string(ThresholdSource s);

struct ReportMetadata {
  PrEstimator pr_estimator = PrEstimator::Trapezoid;
  ThresholdSource threshold_source = ThresholdSource::Tuning;
  int grid_size = 100;
  std::optional<std::vector<std::string>> task_filter;  // empty = no filter
};

// {kind, auc, points:[{x, y, threshold}]}; threshold is null on synthetic
// or averaged points.
nlohmann::json curve_to_json(const Curve& curve, std::optional<double> auc_value);

nlohmann::json calibration_map_to_json(const CalibrationMap& map);

nlohmann::json task_metrics_to_json(const std::string& task, const TaskMetrics& metrics);
TaskMetrics task_metrics_from_json(const nlohmann::json& j);

// Schema-versioned single-run document, the unit the aggregate command
// merges.
nlohmann::json run_metrics_to_json(const RunMetrics& run, const ReportMetadata& meta);
RunMetrics run_metrics_from_json(const nlohmann::json& j);

// The full evaluation report (validates against schemas/report.schema.json).
nlohmann::json report_to_json(const std::vector<RunMetrics>& runs,
                              const AggregateReport& aggregate, const ReportMetadata& meta);

// Per-task table, one "mean +/- std" cell per metric, tasks in the
// aggregate's (decreasing prevalence) order.
std::string report_to_markdown(const AggregateReport& aggregate, const ReportMetadata& meta);

// prevalence,auc_roc,auc_pr,brier,brier_pos,brier_neg,balanced -- one row
// per sweep cell, shortest round-trip formatting, byte-stable.
std::string sweep_to_csv(const SweepTable& table);
nlohmann::json sweep_to_json(const SweepTable& table);

}  // namespace imbeval

#include "imbeval/report.hpp"

#include <cstdio>

#include "imbeval/detail/format.hpp"
#include "imbeval/version.hpp"

namespace imbeval {

namespace {

constexpr const char* kUndefined = "undefined";
constexpr const char* kRngName = "mt19937_64+box-muller";

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string family_name(GeneratorFamily f) {
  switch (f) {
    case GeneratorFamily::Binormal: return "binormal";
    case GeneratorFamily::Constant: return "constant";
    case GeneratorFamily::UniformRandom: return "uniform";
  }
  return "unknown";
}

std::optional<double> cell_to_optional(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) {
    throw SchemaError("metric cell '" + key + "' missing from task row");
  }
  const nlohmann::json& cell = j.at(key);
  if (cell.is_number()) return cell.get<double>();
  if (cell.is_string() && cell.get<std::string>() == kUndefined) return std::nullopt;
  throw SchemaError("metric cell '" + key + "' is neither a number nor \"undefined\"");
}

nlohmann::json metadata_to_json(const ReportMetadata& meta) {
  nlohmann::json j;
  j["pr_estimator"] = to_string(meta.pr_estimator);
  j["threshold_source"] = to_string(meta.threshold_source);
  j["grid_size"] = meta.grid_size;
  j["curve_averaging"] = "vertical";
  j["task_filter"] = meta.task_filter ? nlohmann::json(*meta.task_filter) : nlohmann::json();
  return j;
}

}  // namespace

nlohmann::json metric_cell(const std::optional<double>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(kUndefined);
}

std::string to_string(PrEstimator e) {
  return e == PrEstimator::Trapezoid ? "trapezoid" : "step";
}

std::string to_string(ThresholdSource s) {
  return s == ThresholdSource::Tuning ? "tuning" : "test-in-sample";
}

nlohmann::json curve_to_json(const Curve& curve, std::optional<double> auc_value) {
  nlohmann::json j;
  j["kind"] = curve.kind == CurveKind::Roc ? "roc" : "pr";
  j["auc"] = metric_cell(auc_value);
  nlohmann::json points = nlohmann::json::array();
  for (const CurvePoint& p : curve.points) {
    points.push_back({{"x", p.x},
                      {"y", p.y},
                      {"threshold", p.threshold ? nlohmann::json(*p.threshold) : nlohmann::json()}});
  }
  j["points"] = std::move(points);
  return j;
}

nlohmann::json calibration_map_to_json(const CalibrationMap& map) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const CalibrationBlock& b : map.blocks) {
    blocks.push_back({{"score_min", b.score_min},
                      {"score_max", b.score_max},
                      {"value", b.value},
                      {"count", b.count}});
  }
  return {{"blocks", std::move(blocks)}};
}

nlohmann::json task_metrics_to_json(const std::string& task, const TaskMetrics& metrics) {
  nlohmann::json j;
  j["task"] = task;
  for (const auto& [name, field] : task_metric_fields()) {
    j[name] = metric_cell(metrics.*field);
  }
  return j;
}

TaskMetrics task_metrics_from_json(const nlohmann::json& j) {
  TaskMetrics m;
  for (const auto& [name, field] : task_metric_fields()) {
    m.*field = cell_to_optional(j, name);
  }
  return m;
}

nlohmann::json run_metrics_to_json(const RunMetrics& run, const ReportMetadata& meta) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["run_id"] = run.run_id;
  j["metadata"] = {{"pr_estimator", to_string(meta.pr_estimator)},
                   {"threshold_source", to_string(meta.threshold_source)}};
  nlohmann::json tasks = nlohmann::json::array();
  for (const auto& [name, metrics] : run.tasks) {
    tasks.push_back(task_metrics_to_json(name, metrics));
  }
  j["tasks"] = std::move(tasks);
  return j;
}

RunMetrics run_metrics_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
    throw SchemaError("run document lacks an integer schema_version");
  }
  if (j["schema_version"].get<int>() != kReportSchemaVersion) {
    throw SchemaError("unsupported run document schema_version");
  }
  if (!j.contains("run_id") || !j["run_id"].is_string() || !j.contains("tasks") ||
      !j["tasks"].is_array()) {
    throw SchemaError("run document needs a string run_id and a tasks array");
  }
  RunMetrics run;
  run.run_id = j["run_id"].get<std::string>();
  for (const nlohmann::json& row : j["tasks"]) {
    if (!row.is_object() || !row.contains("task") || !row["task"].is_string()) {
      throw SchemaError("task row lacks a task name");
    }
    const std::string task = row["task"].get<std::string>();
    if (!run.tasks.emplace(task, task_metrics_from_json(row)).second) {
      throw SchemaError("duplicate task '" + task + "' in run document");
    }
  }
  return run;
}

nlohmann::json report_to_json(const std::vector<RunMetrics>& runs,
                              const AggregateReport& aggregate, const ReportMetadata& meta) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  nlohmann::json metadata = metadata_to_json(meta);
  metadata["n_runs"] = aggregate.n_runs;
  j["metadata"] = std::move(metadata);

  nlohmann::json runs_json = nlohmann::json::array();
  for (const RunMetrics& run : runs) {
    nlohmann::json r;
    r["run_id"] = run.run_id;
    nlohmann::json tasks = nlohmann::json::array();
    for (const auto& [name, metrics] : run.tasks) {
      tasks.push_back(task_metrics_to_json(name, metrics));
    }
    r["tasks"] = std::move(tasks);
    runs_json.push_back(std::move(r));
  }
  j["runs"] = std::move(runs_json);

  nlohmann::json agg_tasks = nlohmann::json::array();
  for (const TaskSummary& task : aggregate.tasks) {
    nlohmann::json row;
    row["task"] = task.task;
    nlohmann::json metrics;
    for (const auto& [name, summary] : task.metrics) {
      metrics[name] = {{"mean", metric_cell(summary.mean)},
                       {"std", metric_cell(summary.sample_std)},
                       {"n_runs_defined", summary.n_runs_defined}};
    }
    row["metrics"] = std::move(metrics);
    agg_tasks.push_back(std::move(row));
  }
  j["aggregate"] = {{"tasks", std::move(agg_tasks)}};
  return j;
}

std::string report_to_markdown(const AggregateReport& aggregate, const ReportMetadata& meta) {
  // Column set of the per-task result figures; AUC-PR is relabeled when the
  // step estimator is active so the two are never mistaken for each other.
  const std::vector<std::pair<std::string, std::string>> columns = {
      {"Prevalence", "prevalence"},
      {"AUC-ROC", "auc_roc"},
      {meta.pr_estimator == PrEstimator::Trapezoid ? "AUC-PR" : "AUC-PR (step)", "auc_pr"},
      {"Recall", "recall"},
      {"Specificity", "specificity"},
      {"Precision", "precision"},
      {"Brier", "brier"},
      {"Brier+", "brier_pos"},
      {"Brier-", "brier_neg"},
      {"Balanced Brier", "balanced_brier"},
  };

  std::string out;
  out += "# Evaluation report\n\n";
  out += "- runs: " + std::to_string(aggregate.n_runs) + "\n";
  out += "- threshold source: " + to_string(meta.threshold_source) + "\n";
  out += "- PR area estimator: " + to_string(meta.pr_estimator) + "\n";
  out += "- tasks sorted by decreasing mean prevalence\n\n";

  out += "| Task |";
  for (const auto& [title, key] : columns) out += " " + title + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += "---|";
  out += "\n";

  for (const TaskSummary& task : aggregate.tasks) {
    out += "| " + task.task + " |";
    for (const auto& [title, key] : columns) {
      const MetricSummary& s = task.metric(key);
      if (!s.mean) {
        out += " undefined |";
        continue;
      }
      std::string cell = fixed4(*s.mean) + " ± " + fixed4(s.sample_std.value_or(0.0));
      if (s.n_runs_defined < aggregate.n_runs) {
        cell += " (" + std::to_string(s.n_runs_defined) + "/" +
                std::to_string(aggregate.n_runs) + ")";
      }
      out += " " + cell + " |";
    }
    out += "\n";
  }
  return out;
}

std::string sweep_to_csv(const SweepTable& table) {
  std::string out = "prevalence,auc_roc,auc_pr,brier,brier_pos,brier_neg,balanced\n";
  for (const SweepRow& row : table.rows) {
    out += detail::format_double(row.prevalence);
    out += ',' + detail::format_double(row.auc_roc);
    out += ',' + detail::format_double(row.auc_pr);
    out += ',' + detail::format_double(row.brier.brier);
    // sweep specs always produce both classes, so the strata are defined
    out += ',' + detail::format_double(row.brier.brier_pos.value());
    out += ',' + detail::format_double(row.brier.brier_neg.value());
    out += ',' + detail::format_double(row.brier.balanced.value());
    out += '\n';
  }
  return out;
}

nlohmann::json sweep_to_json(const SweepTable& table) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["generator"] = {
      {"family", family_name(table.request.family)},
      {"separation", table.request.family == GeneratorFamily::Binormal
                         ? nlohmann::json(table.request.separation)
                         : nlohmann::json()},
      {"value", table.request.family == GeneratorFamily::Constant
                    ? nlohmann::json(table.request.value)
                    : nlohmann::json()},
      {"n", table.request.n},
      {"seed", table.request.seed},
      {"rng", kRngName},
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : table.rows) {
    rows.push_back({{"prevalence", row.prevalence},
                    {"auc_roc", row.auc_roc},
                    {"auc_pr", row.auc_pr},
                    {"brier", row.brier.brier},
                    {"brier_pos", metric_cell(row.brier.brier_pos)},
                    {"brier_neg", metric_cell(row.brier.brier_neg)},
                    {"balanced", metric_cell(row.brier.balanced)}});
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace imbeval

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "imbeval/curves.hpp"
#include "imbeval/dataset.hpp"

namespace imbeval {

// Everything one run measured for one task. An empty field means the
// metric was undefined on that run (single-class test set, no tuning
// positives, ...), never that it was skipped silently.
struct TaskMetrics {
  std::optional<double> prevalence;
  std::optional<double> auc_roc;
  std::optional<double> auc_pr;
  std::optional<double> threshold;
  std::optional<double> tuning_f1;
  std::optional<double> recall;
  std::optional<double> specificity;
  std::optional<double> precision;
  std::optional<double> f1;
  std::optional<double> brier;
  std::optional<double> brier_pos;
  std::optional<double> brier_neg;
  std::optional<double> balanced_brier;
  std::optional<double> calibration_loss;
  std::optional<double> refinement_loss;
};

struct RunMetrics {
  std::string run_id;
  std::map<std::string, TaskMetrics> tasks;
};

// Field list in report column order, for generic serialization and
// aggregation.
using TaskMetricField = std::pair<std::string, std::optional<double> TaskMetrics::*>;
const std::vector<TaskMetricField>& task_metric_fields();

// mean/std over the runs where the metric was defined; both empty when it
// never was. sample_std is the n-1 form, reported as 0 for a single run.
struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> sample_std;
  int n_runs_defined = 0;
};

struct TaskSummary {
  std::string task;
  std::map<std::string, MetricSummary> metrics;

  const MetricSummary& metric(const std::string& name) const;
};

// Tasks ordered by decreasing mean prevalence (name-ascending on ties;
// tasks with no defined prevalence sort last).
struct AggregateReport {
  int n_runs = 0;
  std::vector<TaskSummary> tasks;
};

// Vertical average of same-kind curves on an evenly spaced grid of
// grid_size intervals. ROC: mean TPR at each grid FPR, linear
// interpolation per run (vertical segments resolve to their upper TPR).
// PR: mean precision at each grid recall, step interpolation per run
// (precision of the nearest point with recall >= r). Grid points carry no
// thresholds.
Curve mean_curve(const std::vector<Curve>& curves, int grid_size);

// Per task, per metric: mean and sample std over the runs that define it.
// Headline AUCs are means of per-run AUCs, not areas of the mean curve.
AggregateReport summarize_runs(const std::vector<RunMetrics>& runs);

}  // namespace imbeval

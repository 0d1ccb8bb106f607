#include "imbeval/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace imbeval {

const std::vector<TaskMetricField>& task_metric_fields() {
  static const std::vector<TaskMetricField> fields = {
      {"prevalence", &TaskMetrics::prevalence},
      {"auc_roc", &TaskMetrics::auc_roc},
      {"auc_pr", &TaskMetrics::auc_pr},
      {"threshold", &TaskMetrics::threshold},
      {"tuning_f1", &TaskMetrics::tuning_f1},
      {"recall", &TaskMetrics::recall},
      {"specificity", &TaskMetrics::specificity},
      {"precision", &TaskMetrics::precision},
      {"f1", &TaskMetrics::f1},
      {"brier", &TaskMetrics::brier},
      {"brier_pos", &TaskMetrics::brier_pos},
      {"brier_neg", &TaskMetrics::brier_neg},
      {"balanced_brier", &TaskMetrics::balanced_brier},
      {"calibration_loss", &TaskMetrics::calibration_loss},
      {"refinement_loss", &TaskMetrics::refinement_loss},
  };
  return fields;
}

const MetricSummary& TaskSummary::metric(const std::string& name) const {
  auto it = metrics.find(name);
  if (it == metrics.end()) {
    throw ContractError("unknown metric '" + name + "'");
  }
  return it->second;
}

namespace {

// Evaluates a ROC polyline at x, resolving vertical segments (repeated x)
// to their upper TPR.
class RocInterpolator {
 public:
  explicit RocInterpolator(const Curve& curve) {
    for (const CurvePoint& p : curve.points) {
      if (!xs_.empty() && p.x == xs_.back()) {
        ys_.back() = std::max(ys_.back(), p.y);
      } else {
        xs_.push_back(p.x);
        ys_.push_back(p.y);
      }
    }
  }

  double operator()(double x) const {
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
    if (xs_[hi] == x) return ys_[hi];
    const std::size_t lo = hi - 1;
    const double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return ys_[lo] + t * (ys_[hi] - ys_[lo]);
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

// Precision at recall r: the precision of the last curve point (in
// non-increasing recall order) whose recall is still >= r. Integrates to
// the step (average-precision style) area, so averaging never overstates
// precision the way linear PR interpolation would.
class PrInterpolator {
 public:
  explicit PrInterpolator(const Curve& curve) : points_(&curve.points) {}

  double operator()(double r) const {
    const auto& pts = *points_;
    auto first_below = std::partition_point(
        pts.begin(), pts.end(), [r](const CurvePoint& p) { return p.x >= r; });
    if (first_below == pts.begin()) return pts.front().y;  // r above max recall
    return std::prev(first_below)->y;
  }

 private:
  const std::vector<CurvePoint>* points_;
};

}  // namespace

Curve mean_curve(const std::vector<Curve>& curves, int grid_size) {
  if (curves.empty()) {
    throw ContractError("mean_curve requires at least one curve");
  }
  if (grid_size < 1) {
    throw ContractError("grid_size must be at least 1");
  }
  const CurveKind kind = curves.front().kind;
  for (const Curve& c : curves) {
    if (c.kind != kind) {
      throw ContractError("mean_curve requires curves of one kind");
    }
    if (c.points.size() < 2) {
      throw ContractError("mean_curve requires curves with at least two points");
    }
  }

  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(grid_size + 1, 0.0, 1.0);
  Eigen::ArrayXd mean = Eigen::ArrayXd::Zero(grid.size());

  if (kind == CurveKind::Roc) {
    for (const Curve& c : curves) {
      const RocInterpolator interp(c);
      for (Eigen::Index i = 0; i < grid.size(); ++i) mean[i] += interp(grid[i]);
    }
  } else {
    for (const Curve& c : curves) {
      const PrInterpolator interp(c);
      for (Eigen::Index i = 0; i < grid.size(); ++i) mean[i] += interp(grid[i]);
    }
  }
  mean /= static_cast<double>(curves.size());

  Curve out{kind, {}};
  out.points.reserve(static_cast<std::size_t>(grid.size()) + 1);
  if (kind == CurveKind::Roc) {
    if (mean[0] > 0.0) {
      out.points.push_back({0.0, 0.0, std::nullopt});  // keep the (0,0) anchor
    }
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      out.points.push_back({grid[i], mean[i], std::nullopt});
    }
  } else {
    // PR order is non-increasing recall; the r = 0 grid point is the
    // synthetic (0,1) endpoint since every input ends there.
    for (Eigen::Index i = grid.size(); i-- > 0;) {
      out.points.push_back({grid[i], mean[i], std::nullopt});
    }
  }
  return out;
}

AggregateReport summarize_runs(const std::vector<RunMetrics>& runs) {
  if (runs.empty()) {
    throw ContractError("summarize_runs requires at least one run");
  }

  std::set<std::string> task_names;
  for (const RunMetrics& run : runs) {
    for (const auto& [name, metrics] : run.tasks) task_names.insert(name);
  }

  AggregateReport report;
  report.n_runs = static_cast<int>(runs.size());
  for (const std::string& name : task_names) {
    TaskSummary summary;
    summary.task = name;
    for (const auto& [metric_name, field] : task_metric_fields()) {
      std::vector<double> values;
      for (const RunMetrics& run : runs) {
        auto it = run.tasks.find(name);
        if (it == run.tasks.end()) continue;
        if (const std::optional<double>& v = it->second.*field) values.push_back(*v);
      }
      // summing in value order makes the result independent of run order
      std::sort(values.begin(), values.end());
      MetricSummary ms;
      ms.n_runs_defined = static_cast<int>(values.size());
      if (!values.empty()) {
        double sum = 0.0;
        for (double v : values) sum += v;
        const double mean = sum / static_cast<double>(values.size());
        ms.mean = mean;
        if (values.size() > 1) {
          double ss = 0.0;
          for (double v : values) ss += (v - mean) * (v - mean);
          ms.sample_std = std::sqrt(ss / static_cast<double>(values.size() - 1));
        } else {
          ms.sample_std = 0.0;
        }
      }
      summary.metrics.emplace(metric_name, ms);
    }
    report.tasks.push_back(std::move(summary));
  }

  std::stable_sort(report.tasks.begin(), report.tasks.end(),
                   [](const TaskSummary& a, const TaskSummary& b) {
                     const double pa = a.metric("prevalence").mean.value_or(-1.0);
                     const double pb = b.metric("prevalence").mean.value_or(-1.0);
                     if (pa != pb) return pa > pb;
                     return a.task < b.task;
                   });
  return report;
}

}  // namespace imbeval

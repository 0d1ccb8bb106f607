#include "imbeval/thresholds.hpp"

#include <limits>

#include "imbeval/detail/sweep.hpp"

namespace imbeval {

OperatingPoint select_threshold_max_f1(const TaskDataset& tuning) {
  if (tuning.n_pos() < 1) {
    throw UndefinedMetricError("F1 undefined without positive samples");
  }
  // Start from the predict-none sentinel (F1 = 0); scanning thresholds in
  // descending order with a strict improvement test breaks ties toward the
  // largest threshold.
  double best_threshold = std::numeric_limits<double>::infinity();
  double best_f1 = 0.0;
  for (const auto& c : detail::threshold_counts(tuning)) {
    const std::int64_t fn = tuning.n_pos() - c.tp;
    const double f1 =
        c.tp > 0 ? 2.0 * static_cast<double>(c.tp) / static_cast<double>(2 * c.tp + c.fp + fn)
                 : 0.0;
    if (f1 > best_f1) {
      best_f1 = f1;
      best_threshold = c.threshold;
    }
  }
  return {best_threshold, best_f1};
}

ConfusionCounts confusion_at(const TaskDataset& ds, double threshold) {
  ConfusionCounts c;
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    const bool predicted = ds.scores()[i] >= threshold;
    if (ds.positive(i)) {
      (predicted ? c.tp : c.fn)++;
    } else {
      (predicted ? c.fp : c.tn)++;
    }
  }
  return c;
}

PointMetrics point_metrics(const ConfusionCounts& c) {
  PointMetrics m;
  if (c.tp + c.fn > 0) {
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  if (c.tn + c.fp > 0) {
    m.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  }
  if (c.tp + c.fp > 0) {
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (c.tp > 0) {
    m.f1 = 2.0 * static_cast<double>(c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
  } else if (c.fp + c.fn > 0) {
    m.f1 = 0.0;
  }
  return m;
}

}  // namespace imbeval

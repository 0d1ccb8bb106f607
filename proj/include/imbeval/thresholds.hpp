#pragma once

#include <cstdint>
#include <optional>

#include "imbeval/dataset.hpp"

namespace imbeval {

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  bool operator==(const ConfusionCounts&) const = default;
};

// A ratio is empty when its denominator is zero; nothing is fabricated.
struct PointMetrics {
  std::optional<double> recall;
  std::optional<double> specificity;
  std::optional<double> precision;
  std::optional<double> f1;
};

struct OperatingPoint {
  double threshold;
  double tuning_f1;  // maximum F1 achieved on the tuning set at threshold
};

// Scans every candidate threshold (each distinct score, plus a predict-none
// sentinel above the maximum) and returns the F1 maximizer; ties go to the
// largest threshold. Requires at least one positive sample.
OperatingPoint select_threshold_max_f1(const TaskDataset& tuning);

// Counts with prediction positive iff score >= threshold.
ConfusionCounts confusion_at(const TaskDataset& ds, double threshold);

// recall = tp/(tp+fn), specificity = tn/(tn+fp), precision = tp/(tp+fp),
// f1 = 2tp/(2tp+fp+fn). F1 is 0 (not empty) when tp = 0 but positives or
// predicted positives exist.
PointMetrics point_metrics(const ConfusionCounts& c);

}  // namespace imbeval

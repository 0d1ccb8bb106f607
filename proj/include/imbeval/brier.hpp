#pragma once

#include <optional>

#include "imbeval/dataset.hpp"

namespace imbeval {

// Overall, per-class, and balanced squared-error scores of one task.
// A stratum with no samples is empty (never a fabricated 0), and balanced
// is empty whenever either stratum is. Always: brier = prevalence *
// brier_pos + (1 - prevalence) * brier_neg when both strata exist.
struct BrierBundle {
  double brier;
  std::optional<double> brier_pos;   // mean (1 - score)^2 over positives
  std::optional<double> brier_neg;   // mean score^2 over negatives
  std::optional<double> balanced;    // brier_pos + brier_neg, in [0, 2]
};

// Mean squared difference between the 0/1 label and the score.
// Throws UndefinedMetricError on an empty dataset.
double brier(const TaskDataset& ds);

BrierBundle stratified_brier(const TaskDataset& ds);

}  // namespace imbeval

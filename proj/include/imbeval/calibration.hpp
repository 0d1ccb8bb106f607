#pragma once

#include <vector>

#include "imbeval/dataset.hpp"

namespace imbeval {

// One pooled block of the isotonic fit: every sample whose raw score falls
// in [score_min, score_max] maps to value, the block's positive rate on the
// fit data.
struct CalibrationBlock {
  double score_min;
  double score_max;
  double value;
  Eigen::Index count;
};

// Non-decreasing step map from raw score to calibrated probability.
struct CalibrationMap {
  std::vector<CalibrationBlock> blocks;
};

// Least-squares isotonic fit of the 0/1 labels against the scores
// (pool-adjacent-violators). Tied raw scores are pooled into one block
// before fitting so the map stays a function of the score; block merging
// compares exact integer ratios, no tolerances.
CalibrationMap pav_calibrate(const TaskDataset& ds);

// Calibrated value for one score: the value of the block whose range
// contains it (scores between blocks get the nearest block above; scores
// beyond the last block get the last value).
double apply(const CalibrationMap& map, double score);
Eigen::ArrayXd apply(const CalibrationMap& map, const Eigen::ArrayXd& scores);

// brier(raw) split into the part a monotone recalibration removes and the
// part it cannot: refinement_loss = brier after in-sample PAV calibration,
// calibration_loss = brier(raw) - refinement_loss (>= 0 in-sample).
struct CalibrationSplit {
  double calibration_loss;
  double refinement_loss;
};

CalibrationSplit calibration_refinement(const TaskDataset& ds);

}  // namespace imbeval

#pragma once

#include <optional>
#include <vector>

#include "imbeval/dataset.hpp"

namespace imbeval {

enum class CurveKind { Roc, Pr };

// threshold is empty on synthetic endpoints and on averaged curves.
struct CurvePoint {
  double x;
  double y;
  std::optional<double> threshold;

  bool operator==(const CurvePoint&) const = default;
};

// ROC: x = FPR, y = TPR, points ordered by non-decreasing x, anchored at
// (0,0) and (1,1).
// PR: x = recall, y = precision, points ordered by non-increasing recall,
// ending with the synthetic (0,1) point.
struct Curve {
  CurveKind kind;
  std::vector<CurvePoint> points;
};

// One point per distinct score threshold, descending (prediction positive
// iff score >= threshold), plus the (0,0) anchor. Requires both classes.
Curve roc_curve(const TaskDataset& ds);

// One point per distinct threshold up to the largest one reaching full
// recall, reversed to non-increasing recall order, plus the synthetic
// (recall 0, precision 1) endpoint. Requires at least one positive.
Curve pr_curve(const TaskDataset& ds);

// Trapezoidal area under the curve (precision over recall for PR).
// Throws ContractError if the point order violates the kind's invariant.
double auc(const Curve& curve);

// Step-interpolated PR area (average-precision style):
// sum over segments of (recall_k - recall_{k+1}) * precision_k.
// Always below or equal to the trapezoidal PR area; offered because linear
// PR interpolation is optimistic.
double auc_pr_step(const TaskDataset& ds);

}  // namespace imbeval

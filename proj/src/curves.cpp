#include "imbeval/curves.hpp"

#include <algorithm>
#include <numeric>

#include "imbeval/detail/sweep.hpp"

namespace imbeval {

namespace detail {

std::vector<ThresholdCount> threshold_counts(const TaskDataset& ds) {
  const Eigen::Index n = ds.n();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return ds.scores()[a] > ds.scores()[b];
  });

  std::vector<ThresholdCount> counts;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = ds.scores()[order[i]];
    while (i < order.size() && ds.scores()[order[i]] == threshold) {
      if (ds.positive(order[i])) {
        ++tp;
      } else {
        ++fp;
      }
      ++i;
    }
    counts.push_back({threshold, tp, fp});
  }
  return counts;
}

}  // namespace detail

Curve roc_curve(const TaskDataset& ds) {
  if (ds.n_pos() < 1 || ds.n_neg() < 1) {
    throw UndefinedMetricError("ROC undefined without both classes");
  }
  const double n_pos = static_cast<double>(ds.n_pos());
  const double n_neg = static_cast<double>(ds.n_neg());

  Curve curve{CurveKind::Roc, {}};
  const auto counts = detail::threshold_counts(ds);
  curve.points.reserve(counts.size() + 2);
  curve.points.push_back({0.0, 0.0, std::nullopt});
  for (const auto& c : counts) {
    curve.points.push_back({static_cast<double>(c.fp) / n_neg,
                            static_cast<double>(c.tp) / n_pos, c.threshold});
  }
  if (curve.points.back().x != 1.0 || curve.points.back().y != 1.0) {
    curve.points.push_back({1.0, 1.0, std::nullopt});
  }
  return curve;
}

Curve pr_curve(const TaskDataset& ds) {
  if (ds.n_pos() < 1) {
    throw UndefinedMetricError("PR curve undefined without positive samples");
  }
  const auto counts = detail::threshold_counts(ds);
  const double n_pos = static_cast<double>(ds.n_pos());

  // Thresholds below the largest one that already reaches full recall only
  // add false positives; the curve stops there.
  std::size_t last = 0;
  while (counts[last].tp < ds.n_pos()) ++last;

  Curve curve{CurveKind::Pr, {}};
  curve.points.reserve(last + 2);
  for (std::size_t k = last + 1; k-- > 0;) {
    const auto& c = counts[k];
    curve.points.push_back({static_cast<double>(c.tp) / n_pos,
                            static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp),
                            c.threshold});
  }
  curve.points.push_back({0.0, 1.0, std::nullopt});
  return curve;
}

double auc(const Curve& curve) {
  if (curve.points.size() < 2) {
    throw ContractError("auc requires a curve with at least two points");
  }
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const CurvePoint& a = curve.points[i];
    const CurvePoint& b = curve.points[i + 1];
    const double dx = curve.kind == CurveKind::Roc ? b.x - a.x : a.x - b.x;
    if (dx < 0.0) {
      throw ContractError("curve points violate the kind's ordering invariant");
    }
    area += dx * (a.y + b.y) / 2.0;
  }
  return area;
}

double auc_pr_step(const TaskDataset& ds) {
  const Curve curve = pr_curve(ds);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    area += (curve.points[i].x - curve.points[i + 1].x) * curve.points[i].y;
  }
  return area;
}

}  // namespace imbeval

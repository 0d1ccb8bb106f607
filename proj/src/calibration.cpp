#include "imbeval/calibration.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "imbeval/brier.hpp"

namespace imbeval {

namespace {

struct Block {
  double score_min;
  double score_max;
  std::int64_t positives;
  std::int64_t count;
};

// mean(a) >= mean(b), compared exactly via cross-multiplication. Merging
// on equality too keeps the block partition maximal (no two adjacent
// blocks share a value) without touching the fitted values.
bool must_merge(const Block& a, const Block& b) {
  return a.positives * b.count >= b.positives * a.count;
}

}  // namespace

CalibrationMap pav_calibrate(const TaskDataset& ds) {
  if (ds.n() == 0) {
    throw UndefinedMetricError("calibration undefined on an empty dataset");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(ds.n()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return ds.scores()[a] < ds.scores()[b];
  });

  std::vector<Block> stack;
  std::size_t i = 0;
  while (i < order.size()) {
    // one pre-block per distinct score
    const double score = ds.scores()[order[i]];
    Block block{score, score, 0, 0};
    while (i < order.size() && ds.scores()[order[i]] == score) {
      block.positives += ds.positive(order[i]) ? 1 : 0;
      block.count += 1;
      ++i;
    }
    stack.push_back(block);
    while (stack.size() >= 2 && must_merge(stack[stack.size() - 2], stack.back())) {
      Block top = stack.back();
      stack.pop_back();
      stack.back().score_max = top.score_max;
      stack.back().positives += top.positives;
      stack.back().count += top.count;
    }
  }

  CalibrationMap map;
  map.blocks.reserve(stack.size());
  for (const Block& b : stack) {
    map.blocks.push_back({b.score_min, b.score_max,
                          static_cast<double>(b.positives) / static_cast<double>(b.count),
                          b.count});
  }
  return map;
}

double apply(const CalibrationMap& map, double score) {
  if (map.blocks.empty()) {
    throw ContractError("cannot apply an empty calibration map");
  }
  auto it = std::lower_bound(
      map.blocks.begin(), map.blocks.end(), score,
      [](const CalibrationBlock& b, double s) { return b.score_max < s; });
  if (it == map.blocks.end()) return map.blocks.back().value;
  return it->value;
}

Eigen::ArrayXd apply(const CalibrationMap& map, const Eigen::ArrayXd& scores) {
  Eigen::ArrayXd out(scores.size());
  for (Eigen::Index i = 0; i < scores.size(); ++i) out[i] = apply(map, scores[i]);
  return out;
}

CalibrationSplit calibration_refinement(const TaskDataset& ds) {
  const CalibrationMap map = pav_calibrate(ds);
  const TaskDataset calibrated(ds.task_name(), ds.labels(), apply(map, ds.scores()));
  const double refinement = brier(calibrated);
  return {brier(ds) - refinement, refinement};
}

}  // namespace imbeval

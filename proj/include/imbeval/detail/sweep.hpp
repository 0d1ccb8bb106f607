#pragma once

#include <cstdint>
#include <vector>

#include "imbeval/dataset.hpp"

namespace imbeval::detail {

// Cumulative confusion counts at one candidate threshold (prediction is
// positive iff score >= threshold). Tied scores are pooled into a single
// entry.
struct ThresholdCount {
  double threshold;
  std::int64_t tp;
  std::int64_t fp;
};

// One entry per distinct score, in descending threshold order. The last
// entry always has tp == n_pos and fp == n_neg.
std::vector<ThresholdCount> threshold_counts(const TaskDataset& ds);

}  // namespace imbeval::detail

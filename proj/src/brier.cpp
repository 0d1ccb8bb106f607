#include "imbeval/brier.hpp"

namespace imbeval {

double brier(const TaskDataset& ds) {
  if (ds.n() == 0) {
    throw UndefinedMetricError("Brier score undefined on an empty dataset");
  }
  return (ds.labels() - ds.scores()).square().mean();
}

BrierBundle stratified_brier(const TaskDataset& ds) {
  if (ds.n() == 0) {
    throw UndefinedMetricError("Brier score undefined on an empty dataset");
  }
  const Eigen::ArrayXd sq = (ds.labels() - ds.scores()).square();

  BrierBundle b{sq.mean(), std::nullopt, std::nullopt, std::nullopt};
  if (ds.n_pos() > 0) {
    b.brier_pos = (ds.labels() * sq).sum() / static_cast<double>(ds.n_pos());
  }
  if (ds.n_neg() > 0) {
    b.brier_neg = ((1.0 - ds.labels()) * sq).sum() / static_cast<double>(ds.n_neg());
  }
  if (b.brier_pos && b.brier_neg) {
    b.balanced = *b.brier_pos + *b.brier_neg;
  }
  return b;
}

}  // namespace imbeval

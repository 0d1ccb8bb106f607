#include "imbeval/dataset.hpp"

#include <cmath>
#include <utility>

namespace imbeval {

namespace {

void check_score(double s) {
  if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
    throw ContractError("score must be finite and within [0,1]");
  }
}

}  // namespace

TaskDataset::TaskDataset(std::string task_name, const std::vector<LabeledScore>& samples)
    : task_name_(std::move(task_name)),
      labels_(static_cast<Eigen::Index>(samples.size())),
      scores_(static_cast<Eigen::Index>(samples.size())) {
  Eigen::Index i = 0;
  for (const LabeledScore& s : samples) {
    if (s.label != Label::Positive && s.label != Label::Negative) {
      throw ContractError("dataset samples must be labeled Positive or Negative");
    }
    check_score(s.score);
    labels_[i] = s.label == Label::Positive ? 1.0 : 0.0;
    scores_[i] = s.score;
    ++i;
  }
  n_pos_ = static_cast<Eigen::Index>(labels_.sum());
}

TaskDataset::TaskDataset(std::string task_name, Eigen::ArrayXd labels, Eigen::ArrayXd scores)
    : task_name_(std::move(task_name)), labels_(std::move(labels)), scores_(std::move(scores)) {
  if (labels_.size() != scores_.size()) {
    throw ContractError("labels and scores must have equal length");
  }
  for (Eigen::Index i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 0.0 && labels_[i] != 1.0) {
      throw ContractError("labels must be exactly 0.0 or 1.0");
    }
    check_score(scores_[i]);
  }
  n_pos_ = static_cast<Eigen::Index>(labels_.sum());
}

LabeledScore TaskDataset::sample(Eigen::Index i) const {
  return {positive(i) ? Label::Positive : Label::Negative, scores_[i]};
}

std::vector<LabeledScore> TaskDataset::samples() const {
  std::vector<LabeledScore> out;
  out.reserve(static_cast<std::size_t>(n()));
  for (Eigen::Index i = 0; i < n(); ++i) out.push_back(sample(i));
  return out;
}

bool TaskDataset::operator==(const TaskDataset& other) const {
  return task_name_ == other.task_name_ && labels_.size() == other.labels_.size() &&
         (labels_ == other.labels_).all() && (scores_ == other.scores_).all();
}

double prevalence(const TaskDataset& ds) {
  if (ds.n() == 0) {
    throw UndefinedMetricError("prevalence undefined on an empty dataset");
  }
  return static_cast<double>(ds.n_pos()) / static_cast<double>(ds.n());
}

}  // namespace imbeval

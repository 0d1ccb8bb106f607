#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "imbeval/errors.hpp"

namespace imbeval {

// Ground-truth annotation state of one sample for one task.
// Uncertain and Missing exist only during ingestion; datasets never hold them.
enum class Label { Positive, Negative, Uncertain, Missing };

// One usable sample: a binary label and a probability-scale score.
struct LabeledScore {
  Label label;   // Positive or Negative only
  double score;  // finite, in [0, 1]
};

// All usable samples of one binary task, column-major: labels as 0/1
// doubles and scores side by side, so metric kernels reduce to Eigen
// array expressions. Immutable after construction; safe to share across
// threads.
class TaskDataset {
 public:
  TaskDataset(std::string task_name, const std::vector<LabeledScore>& samples);

  // labels must be exactly 0.0 or 1.0; scores finite in [0, 1].
  TaskDataset(std::string task_name, Eigen::ArrayXd labels, Eigen::ArrayXd scores);

  const std::string& task_name() const { return task_name_; }
  Eigen::Index n() const { return scores_.size(); }
  Eigen::Index n_pos() const { return n_pos_; }
  Eigen::Index n_neg() const { return scores_.size() - n_pos_; }

  // 1.0 for Positive, 0.0 for Negative, sample order as ingested.
  const Eigen::ArrayXd& labels() const { return labels_; }
  const Eigen::ArrayXd& scores() const { return scores_; }

  bool positive(Eigen::Index i) const { return labels_[i] != 0.0; }
  LabeledScore sample(Eigen::Index i) const;
  std::vector<LabeledScore> samples() const;

  bool operator==(const TaskDataset& other) const;

 private:
  std::string task_name_;
  Eigen::ArrayXd labels_;
  Eigen::ArrayXd scores_;
  Eigen::Index n_pos_ = 0;
};

// Fraction of positive samples. Throws UndefinedMetricError on an empty
// dataset.
double prevalence(const TaskDataset& ds);

// Per-task ingestion bookkeeping: every input row lands in exactly one
// bucket, so kept + dropped_uncertain + dropped_missing = rows read.
struct ExclusionCounts {
  std::size_t kept = 0;
  std::size_t dropped_uncertain = 0;
  std::size_t dropped_missing = 0;

  std::size_t total() const { return kept + dropped_uncertain + dropped_missing; }
};

// One run (one split seed): every task's dataset, keyed by task name.
struct RunData {
  std::string run_id;
  std::map<std::string, TaskDataset> tasks;
  std::map<std::string, ExclusionCounts> exclusions;

  bool operator==(const RunData& other) const {
    // exclusion counters are parse metadata, not data
    return run_id == other.run_id && tasks == other.tasks;
  }
};

}  // namespace imbeval

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "imbeval/brier.hpp"
#include "imbeval/dataset.hpp"

namespace imbeval {

// Seedable generator with a bit-exact cross-platform output stream:
// mt19937_64 (whose sequence the standard fixes) plus explicit uniform and
// Box-Muller conversions, instead of the implementation-defined <random>
// distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (two uniforms per draw, cosine branch).
  double normal();

 private:
  std::mt19937_64 engine_;
};

enum class GeneratorFamily { Binormal, Constant, UniformRandom };

// Binormal: negatives ~ N(0,1), positives ~ N(separation,1), both mapped
// to (0,1) by the logistic function. Constant: every score is value.
// UniformRandom: scores uniform in [0,1) for both classes.
struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::UniformRandom;
  double separation = 1.0;  // Binormal only
  double value = 0.5;       // Constant only
  double prevalence = 0.5;  // strictly inside (0,1)
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  std::string task_name = "synthetic";
};

// Stratified draw: exactly round(n * prevalence) positives (emitted first),
// the rest negatives. Deterministic given the seed. Throws
// DegenerateSpecError when the rounded positive count is 0 or n.
TaskDataset generate(const GeneratorSpec& spec);

// The Binormal draws before the logistic squash, aligned 1:1 with
// generate()'s samples. The squash is strictly monotone, so ranking
// metrics agree between the two.
struct BinormalDraws {
  Eigen::ArrayXd labels;  // 0/1
  Eigen::ArrayXd raw;     // normal draws, unsquashed
};
BinormalDraws binormal_raw_draws(const GeneratorSpec& spec);

double logistic(double z);

struct SweepRequest {
  GeneratorFamily family = GeneratorFamily::UniformRandom;
  double separation = 1.0;
  double value = 0.5;
  std::vector<double> prevalences;
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SweepRow {
  double prevalence;
  double auc_roc;
  double auc_pr;  // trapezoidal
  BrierBundle brier;
};

struct SweepTable {
  SweepRequest request;
  std::vector<SweepRow> rows;
};

// One row per requested prevalence; cell i draws its own dataset with seed
// request.seed + i, so results do not depend on the thread count.
SweepTable prevalence_sweep(const SweepRequest& request);

}  // namespace imbeval

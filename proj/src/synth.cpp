#include "imbeval/synth.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <numbers>

#include "imbeval/curves.hpp"

namespace imbeval {

double Rng::normal() {
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

namespace {

Eigen::Index positive_count(const GeneratorSpec& spec) {
  if (spec.n < 1) {
    throw DegenerateSpecError("generator needs n >= 1");
  }
  if (!(spec.prevalence > 0.0 && spec.prevalence < 1.0)) {
    throw DegenerateSpecError("prevalence must lie strictly inside (0,1)");
  }
  const auto n_pos = static_cast<Eigen::Index>(
      std::llround(spec.prevalence * static_cast<double>(spec.n)));
  if (n_pos <= 0 || n_pos >= spec.n) {
    throw DegenerateSpecError("round(n * prevalence) leaves an empty class (n=" +
                              std::to_string(spec.n) + ", prevalence=" +
                              std::to_string(spec.prevalence) + ")");
  }
  return n_pos;
}

Eigen::ArrayXd stratified_labels(Eigen::Index n, Eigen::Index n_pos) {
  Eigen::ArrayXd labels = Eigen::ArrayXd::Zero(n);
  labels.head(n_pos).setOnes();
  return labels;
}

}  // namespace

BinormalDraws binormal_raw_draws(const GeneratorSpec& spec) {
  const Eigen::Index n_pos = positive_count(spec);
  Rng rng(spec.seed);
  BinormalDraws draws{stratified_labels(spec.n, n_pos), Eigen::ArrayXd(spec.n)};
  for (Eigen::Index i = 0; i < spec.n; ++i) {
    draws.raw[i] = rng.normal() + (i < n_pos ? spec.separation : 0.0);
  }
  return draws;
}

TaskDataset generate(const GeneratorSpec& spec) {
  const Eigen::Index n_pos = positive_count(spec);

  switch (spec.family) {
    case GeneratorFamily::Binormal: {
      const BinormalDraws draws = binormal_raw_draws(spec);
      return {spec.task_name, draws.labels, draws.raw.unaryExpr([](double z) {
                return logistic(z);
              })};
    }
    case GeneratorFamily::Constant: {
      if (!(spec.value >= 0.0 && spec.value <= 1.0)) {
        throw DegenerateSpecError("constant score must lie in [0,1]");
      }
      return {spec.task_name, stratified_labels(spec.n, n_pos),
              Eigen::ArrayXd::Constant(spec.n, spec.value)};
    }
    case GeneratorFamily::UniformRandom: {
      Rng rng(spec.seed);
      Eigen::ArrayXd scores(spec.n);
      for (Eigen::Index i = 0; i < spec.n; ++i) scores[i] = rng.uniform01();
      return {spec.task_name, stratified_labels(spec.n, n_pos), scores};
    }
  }
  throw ContractError("unknown generator family");
}

SweepTable prevalence_sweep(const SweepRequest& request) {
  SweepTable table;
  table.request = request;
  table.rows.resize(request.prevalences.size());

  auto compute_cell = [&](std::size_t i) {
    GeneratorSpec spec;
    spec.family = request.family;
    spec.separation = request.separation;
    spec.value = request.value;
    spec.prevalence = request.prevalences[i];
    spec.n = request.n;
    spec.seed = request.seed + static_cast<std::uint64_t>(i);
    const TaskDataset ds = generate(spec);
    table.rows[i] = {request.prevalences[i], auc(roc_curve(ds)), auc(pr_curve(ds)),
                     stratified_brier(ds)};
  };

  const int threads = std::max(1, request.threads);
  if (threads == 1 || table.rows.size() < 2) {
    for (std::size_t i = 0; i < table.rows.size(); ++i) compute_cell(i);
    return table;
  }

  // Each cell writes only its own row, so the schedule cannot change the
  // result.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < table.rows.size(); i = next.fetch_add(1)) {
      compute_cell(i);
    }
  };
  std::vector<std::future<void>> futures;
  const int n_workers = std::min<int>(threads, static_cast<int>(table.rows.size()));
  futures.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) {
    futures.push_back(std::async(std::launch::async, worker));
  }
  for (auto& f : futures) f.get();  // rethrows degenerate-spec errors
  return table;
}

}  // namespace imbeval

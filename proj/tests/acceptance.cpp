// Acceptance suite: end-to-end checks of the analytical guarantees the
// library makes, each printed as one [PASS]/[FAIL] line with its runtime.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "imbeval/brier.hpp"
#include "imbeval/calibration.hpp"
#include "imbeval/curves.hpp"
#include "imbeval/synth.hpp"
#include "imbeval/thresholds.hpp"
#include "oracles.hpp"

using namespace imbeval;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTol = 1e-12;

class Criterion {
 public:
  Criterion(std::string id, std::string label, double budget_seconds)
      : id_(std::move(id)), label_(std::move(label)), budget_(budget_seconds),
        start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failure_count_;
  }

  void finish() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    expect(seconds < budget_, "runtime " + std::to_string(seconds) + "s exceeded " +
                                  std::to_string(budget_) + "s budget");
    std::printf("[%s] %s %s (%.2fs)\n", failure_count_ == 0 ? "PASS" : "FAIL", id_.c_str(),
                label_.c_str(), seconds);
    for (const std::string& f : failures_) std::printf("       - %s\n", f.c_str());
    std::fflush(stdout);
    const std::string first = failures_.empty() ? std::string("failed") : failures_.front();
    REQUIRE_MESSAGE(failure_count_ == 0, first);
  }

 private:
  std::string id_;
  std::string label_;
  double budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> failures_;
  int failure_count_ = 0;
};

bool close(double a, double b, double tol = kTol) { return std::abs(a - b) <= tol; }

TaskDataset dummy_rare() {
  Eigen::ArrayXd labels = Eigen::ArrayXd::Zero(100);
  labels[0] = 1.0;
  return {"rare", labels, Eigen::ArrayXd::Zero(100)};
}

TaskDataset duplicate_negatives(const TaskDataset& ds, int k) {
  std::vector<LabeledScore> samples = ds.samples();
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    if (!ds.positive(i)) {
      for (int c = 1; c < k; ++c) samples.push_back(ds.sample(i));
    }
  }
  return {ds.task_name(), samples};
}

// --- CLI plumbing for the end-to-end criteria ---

const std::string kCli = IMBEVAL_CLI_PATH;
const std::string kData = IMBEVAL_TEST_DATA;

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("imbeval_acc_" + std::to_string(::getpid()) + "_" + tag + "_" +
                        std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string command = kCli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("criterion 1: dummy-classifier exactness") {
  Criterion c("A1", "dummy-classifier exactness", 1.0);
  const BrierBundle b = stratified_brier(dummy_rare());
  c.expect(close(b.brier, 0.01), "brier != 0.01");
  c.expect(b.brier_pos && close(*b.brier_pos, 1.0), "brier_pos != 1.0");
  c.expect(b.brier_neg && close(*b.brier_neg, 0.0), "brier_neg != 0.0");
  c.expect(b.balanced && close(*b.balanced, 1.0), "balanced != 1.0");

  // the synthetic constant-zero generator must reproduce the same bundle
  GeneratorSpec spec;
  spec.family = GeneratorFamily::Constant;
  spec.value = 0.0;
  spec.prevalence = 0.01;
  spec.n = 100;
  const BrierBundle g = stratified_brier(generate(spec));
  c.expect(close(g.brier, 0.01) && g.brier_pos && close(*g.brier_pos, 1.0) &&
               g.brier_neg && close(*g.brier_neg, 0.0) && g.balanced && close(*g.balanced, 1.0),
           "generated dummy bundle mismatch");
  c.finish();
}

TEST_CASE("criterion 2: mixture identity") {
  Criterion c("A2", "stratified Brier mixture identity", 5.0);
  std::mt19937_64 rng(1002);
  oracles::RandomDatasetOptions opt;
  opt.force_both_classes = true;
  opt.min_n = 2;
  opt.max_n = 500;
  opt.score_grid = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const TaskDataset ds = oracles::random_dataset(rng, opt);
    const BrierBundle b = stratified_brier(ds);
    const double pi = static_cast<double>(ds.n_pos()) / static_cast<double>(ds.n());
    c.expect(close(b.brier, pi * *b.brier_pos + (1.0 - pi) * *b.brier_neg),
             "mixture identity broken at rep " + std::to_string(rep));
  }
  c.finish();
}

TEST_CASE("criterion 3: AUC-ROC pair-counting oracle") {
  Criterion c("A3", "trapezoidal AUC-ROC equals the rank statistic", 10.0);
  std::mt19937_64 rng(1003);
  oracles::RandomDatasetOptions opt;
  opt.force_both_classes = true;
  opt.min_n = 2;
  opt.max_n = 200;
  opt.score_grid = 12;  // plenty of ties
  for (int rep = 0; rep < 1000; ++rep) {
    const TaskDataset ds = oracles::random_dataset(rng, opt);
    c.expect(close(auc(roc_curve(ds)), oracles::pair_count_auc(ds)),
             "oracle mismatch at rep " + std::to_string(rep));
  }
  c.finish();
}

TEST_CASE("criterion 4: prevalence invariance vs dependence") {
  Criterion c("A4", "sweeps: AUC-ROC flat, AUC-PR tracks prevalence", 30.0);

  SweepRequest uniform;
  uniform.family = GeneratorFamily::UniformRandom;
  uniform.prevalences = {0.5, 0.1, 0.01};
  uniform.n = 100000;
  uniform.seed = 7;
  for (const SweepRow& row : prevalence_sweep(uniform).rows) {
    c.expect(row.auc_roc >= 0.48 && row.auc_roc <= 0.52,
             "uniform AUC-ROC " + std::to_string(row.auc_roc) + " outside [0.48,0.52] at " +
                 std::to_string(row.prevalence));
    c.expect(std::abs(row.auc_pr - row.prevalence) <= 0.02,
             "uniform AUC-PR " + std::to_string(row.auc_pr) + " off prevalence " +
                 std::to_string(row.prevalence));
  }

  SweepRequest binormal = uniform;
  binormal.family = GeneratorFamily::Binormal;
  binormal.separation = 1.5;
  const SweepTable bn = prevalence_sweep(binormal);
  double roc_min = 1.0, roc_max = 0.0;
  for (const SweepRow& row : bn.rows) {
    roc_min = std::min(roc_min, row.auc_roc);
    roc_max = std::max(roc_max, row.auc_roc);
  }
  c.expect(roc_max - roc_min <= 0.02,
           "binormal AUC-ROC spread " + std::to_string(roc_max - roc_min) + " > 0.02");
  for (std::size_t i = 0; i + 1 < bn.rows.size(); ++i) {
    // prevalences are listed in decreasing order
    c.expect(bn.rows[i].auc_pr > bn.rows[i + 1].auc_pr,
             "binormal AUC-PR not strictly decreasing with prevalence");
  }
  c.finish();
}

TEST_CASE("criterion 5: monotone-transform invariance") {
  Criterion c("A5", "cube transform: curves and counts fixed, Brier moves", 5.0);
  std::mt19937_64 rng(1005);
  oracles::RandomDatasetOptions opt;
  opt.force_both_classes = true;
  opt.min_n = 2;
  int brier_changed = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const TaskDataset tuning = oracles::random_dataset(rng, opt);
    const TaskDataset test = oracles::random_dataset(rng, opt);
    const TaskDataset tuning_t(tuning.task_name(), tuning.labels(), tuning.scores().cube());
    const TaskDataset test_t(test.task_name(), test.labels(), test.scores().cube());

    const Curve roc_a = roc_curve(test), roc_b = roc_curve(test_t);
    const Curve pr_a = pr_curve(test), pr_b = pr_curve(test_t);
    bool same = roc_a.points.size() == roc_b.points.size() &&
                pr_a.points.size() == pr_b.points.size();
    if (same) {
      for (std::size_t i = 0; i < roc_a.points.size(); ++i) {
        same &= roc_a.points[i].x == roc_b.points[i].x && roc_a.points[i].y == roc_b.points[i].y;
      }
      for (std::size_t i = 0; i < pr_a.points.size(); ++i) {
        same &= pr_a.points[i].x == pr_b.points[i].x && pr_a.points[i].y == pr_b.points[i].y;
      }
    }
    c.expect(same, "curve point sets changed at rep " + std::to_string(rep));

    const OperatingPoint op = select_threshold_max_f1(tuning);
    const OperatingPoint op_t = select_threshold_max_f1(tuning_t);
    c.expect(confusion_at(test_t, op_t.threshold) == confusion_at(test, op.threshold),
             "transferred threshold changed counts at rep " + std::to_string(rep));

    const bool degenerate =
        ((test.scores() == 0.0) || (test.scores() == 1.0)).all();
    if (!degenerate && brier(test) != brier(test_t)) ++brier_changed;
  }
  c.expect(brier_changed > 0, "Brier never changed under the cube transform");
  c.finish();
}

TEST_CASE("criterion 6: threshold selection oracle") {
  Criterion c("A6", "max-F1 selection equals the exhaustive scan", 10.0);
  std::mt19937_64 rng(1006);
  oracles::RandomDatasetOptions opt;
  opt.force_both_classes = true;
  opt.min_n = 2;
  opt.max_n = 200;
  for (int rep = 0; rep < 1000; ++rep) {
    const TaskDataset ds = oracles::random_dataset(rng, opt);
    const OperatingPoint op = select_threshold_max_f1(ds);
    const auto brute = oracles::brute_force_max_f1(ds);
    c.expect(op.threshold == brute.threshold && op.tuning_f1 == brute.f1,
             "selection differs from scan at rep " + std::to_string(rep));
  }
  c.finish();
}

TEST_CASE("criterion 7: PAV properties and brute-force agreement") {
  Criterion c("A7", "isotonic calibration properties", 20.0);
  std::mt19937_64 rng(1007);
  oracles::RandomDatasetOptions opt;
  opt.min_n = 1;
  opt.max_n = 300;
  for (int rep = 0; rep < 1000; ++rep) {
    const TaskDataset ds = oracles::random_dataset(rng, opt);
    const CalibrationMap map = pav_calibrate(ds);
    for (std::size_t i = 0; i + 1 < map.blocks.size(); ++i) {
      c.expect(map.blocks[i].value <= map.blocks[i + 1].value,
               "calibrated values decrease at rep " + std::to_string(rep));
    }
    const TaskDataset calibrated(ds.task_name(), ds.labels(), apply(map, ds.scores()));
    c.expect(brier(calibrated) <= brier(ds) + kTol,
             "calibrated Brier above raw at rep " + std::to_string(rep));
    const CalibrationSplit split = calibration_refinement(ds);
    c.expect(close(split.calibration_loss + split.refinement_loss, brier(ds)),
             "loss split does not sum to raw Brier at rep " + std::to_string(rep));
  }

  oracles::RandomDatasetOptions small;
  small.min_n = 1;
  small.max_n = 12;
  small.score_grid = 6;
  for (int rep = 0; rep < 200; ++rep) {
    const TaskDataset ds = oracles::random_dataset(rng, small);
    const Eigen::ArrayXd fitted = apply(pav_calibrate(ds), ds.scores());
    const std::vector<double> brute = oracles::brute_force_isotonic(ds);
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
      c.expect(std::abs(fitted[i] - brute[static_cast<std::size_t>(i)]) <= 1e-9,
               "brute-force isotonic mismatch at rep " + std::to_string(rep));
    }
  }
  c.finish();
}

TEST_CASE("criterion 8: negative-duplication robustness") {
  Criterion c("A8", "duplicating negatives moves only prevalence-bound metrics", 5.0);
  std::mt19937_64 rng(1008);
  oracles::RandomDatasetOptions opt;
  opt.force_both_classes = true;
  opt.min_n = 2;
  opt.max_n = 150;
  for (int rep = 0; rep < 200; ++rep) {
    const TaskDataset ds = oracles::random_dataset(rng, opt);
    const double roc0 = auc(roc_curve(ds));
    const double pr0 = auc(pr_curve(ds));
    const BrierBundle b0 = stratified_brier(ds);
    for (int k : {2, 10}) {
      const TaskDataset dup = duplicate_negatives(ds, k);
      c.expect(close(auc(roc_curve(dup)), roc0), "AUC-ROC moved at rep " + std::to_string(rep));
      const BrierBundle b = stratified_brier(dup);
      c.expect(close(*b.brier_pos, *b0.brier_pos) && close(*b.brier_neg, *b0.brier_neg) &&
                   close(*b.balanced, *b0.balanced),
               "stratified Brier moved at rep " + std::to_string(rep));
      c.expect(auc(pr_curve(dup)) <= pr0 + kTol,
               "AUC-PR rose under negative duplication at rep " + std::to_string(rep));
      c.expect(std::abs(b.brier - *b0.brier_neg) <= std::abs(b0.brier - *b0.brier_neg) + kTol,
               "Brier did not move toward the majority class at rep " + std::to_string(rep));
    }
  }
  c.finish();
}

TEST_CASE("criterion 9: end-to-end golden report") {
  Criterion c("A9", "evaluate fixture golden row, byte-stable", 1.0);
  const std::string fixture = kData + "/four_sample.csv";
  const fs::path out_a = fresh_dir("golden_a");
  const fs::path out_b = fresh_dir("golden_b");
  const std::string args = "evaluate --tuning " + fixture + " --test " + fixture + " --output ";
  c.expect(run_cli(args + out_a.string()) == 0, "first evaluate failed");
  c.expect(run_cli(args + out_b.string()) == 0, "second evaluate failed");

  const std::string report_a = slurp(out_a / "report.json");
  c.expect(!report_a.empty(), "report.json missing");
  c.expect(report_a == slurp(out_b / "report.json"), "report.json not byte-stable");
  c.expect(slurp(out_a / "report.md") == slurp(out_b / "report.md"),
           "report.md not byte-stable");
  c.expect(slurp(out_a / "curves" / "mean" / "demo.pr.json") ==
               slurp(out_b / "curves" / "mean" / "demo.pr.json"),
           "curve exports not byte-stable");

  const json report = json::parse(report_a);
  json row;
  for (const json& t : report["runs"][0]["tasks"]) {
    if (t["task"] == "demo") row = t;
  }
  c.expect(!row.is_null(), "demo task missing from report");
  c.expect(row["auc_roc"] == 0.75, "auc_roc != 0.75");
  c.expect(row["auc_pr"].is_number() && close(row["auc_pr"].get<double>(), 19.0 / 24.0),
           "auc_pr != 19/24");
  c.expect(row["threshold"] == 0.35, "threshold != 0.35");
  c.expect(row["precision"].is_number() && close(row["precision"].get<double>(), 2.0 / 3.0),
           "precision != 2/3");
  c.expect(row["recall"] == 1.0, "recall != 1.0");
  c.expect(row["specificity"] == 0.5, "specificity != 0.5");
  c.expect(row["f1"].is_number() && close(row["f1"].get<double>(), 0.8), "f1 != 0.8");
  c.finish();
}

TEST_CASE("criterion 10: sweep determinism across runs and thread counts") {
  Criterion c("A10", "sweep CSV byte-identical across invocations and threads", 30.0);
  const fs::path dir = fresh_dir("sweep");
  const std::string base =
      "sweep --family uniform --prevalences 0.5,0.1,0.01 --n 100000 --seed 7 --output ";
  c.expect(run_cli(base + (dir / "a.csv").string() + " --threads 1") == 0, "sweep 1 failed");
  c.expect(run_cli(base + (dir / "b.csv").string() + " --threads 1") == 0, "sweep 2 failed");
  c.expect(run_cli(base + (dir / "c.csv").string() + " --threads 4") == 0, "sweep 3 failed");
  const std::string a = slurp(dir / "a.csv");
  c.expect(!a.empty(), "sweep CSV empty");
  c.expect(a == slurp(dir / "b.csv"), "repeat invocation differs");
  c.expect(a == slurp(dir / "c.csv"), "multi-threaded run differs");
  c.finish();
}

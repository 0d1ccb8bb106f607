#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "imbeval/thresholds.hpp"
#include "oracles.hpp"

using namespace imbeval;

namespace {

TaskDataset make(std::initializer_list<double> labels, std::initializer_list<double> scores) {
  Eigen::ArrayXd l(static_cast<Eigen::Index>(labels.size()));
  Eigen::ArrayXd s(static_cast<Eigen::Index>(scores.size()));
  Eigen::Index i = 0;
  for (double v : labels) l[i++] = v;
  i = 0;
  for (double v : scores) s[i++] = v;
  return {"t", l, s};
}

}  // namespace

TEST_CASE("perfect separation selects the smallest positive score") {
  const OperatingPoint op = select_threshold_max_f1(make({0, 0, 1, 1}, {0.1, 0.2, 0.7, 0.9}));
  CHECK(op.threshold == 0.7);
  CHECK(op.tuning_f1 == 1.0);
}

TEST_CASE("four-sample instance selects 0.35 with F1 0.8") {
  const OperatingPoint op = select_threshold_max_f1(make({0, 0, 1, 1}, {0.1, 0.4, 0.35, 0.8}));
  CHECK(op.threshold == 0.35);
  CHECK(op.tuning_f1 == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("constant scores select the constant (all-positive rule)") {
  const OperatingPoint op = select_threshold_max_f1(make({1, 1, 0, 0}, {0.6, 0.6, 0.6, 0.6}));
  CHECK(op.threshold == 0.6);
  CHECK(op.tuning_f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("selection requires positives") {
  CHECK_THROWS_AS(select_threshold_max_f1(make({0, 0}, {0.1, 0.2})), UndefinedMetricError);
}

TEST_CASE("confusion counts at fixed thresholds") {
  const TaskDataset ds = make({0, 0, 1, 1}, {0.1, 0.4, 0.35, 0.8});

  CHECK(confusion_at(ds, 2.0) == ConfusionCounts{0, 0, 2, 2});  // predict none
  CHECK(confusion_at(ds, 0.35) == ConfusionCounts{2, 1, 1, 0});
  CHECK(confusion_at(ds, 0.0) == ConfusionCounts{2, 2, 0, 0});  // predict all

  // threshold is closed on the positive side: score >= t
  CHECK(confusion_at(ds, 0.4) == ConfusionCounts{1, 1, 1, 1});
}

TEST_CASE("point metrics handle the documented degeneracies") {
  const PointMetrics m = point_metrics({2, 1, 1, 0});
  CHECK(m.recall == 1.0);
  CHECK(m.specificity == 0.5);
  CHECK(*m.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(*m.f1 == doctest::Approx(0.8).epsilon(1e-12));

  const PointMetrics none = point_metrics({0, 0, 5, 3});  // predict-none
  CHECK(!none.precision.has_value());
  CHECK(none.recall == 0.0);
  CHECK(none.specificity == 1.0);
  CHECK(none.f1 == 0.0);

  const PointMetrics perfect = point_metrics({3, 0, 4, 0});
  CHECK(perfect.recall == 1.0);
  CHECK(perfect.specificity == 1.0);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.f1 == 1.0);

  const PointMetrics empty = point_metrics({0, 0, 0, 0});
  CHECK(!empty.recall.has_value());
  CHECK(!empty.specificity.has_value());
  CHECK(!empty.precision.has_value());
  CHECK(!empty.f1.has_value());

  // tp = 0 with only true negatives: no positives, none predicted
  const PointMetrics tn_only = point_metrics({0, 0, 7, 0});
  CHECK(!tn_only.f1.has_value());
}

TEST_CASE("selection matches the exhaustive scan") {
  std::mt19937_64 rng(52);
  oracles::RandomDatasetOptions opt;
  opt.force_both_classes = true;
  opt.min_n = 2;
  opt.max_n = 200;
  for (int rep = 0; rep < 400; ++rep) {
    const TaskDataset ds = oracles::random_dataset(rng, opt);
    const OperatingPoint op = select_threshold_max_f1(ds);
    const auto brute = oracles::brute_force_max_f1(ds);
    CHECK(op.threshold == brute.threshold);
    CHECK(op.tuning_f1 == brute.f1);
  }
}

TEST_CASE("selected threshold transfers back to its own tuning set") {
  std::mt19937_64 rng(53);
  oracles::RandomDatasetOptions opt;
  opt.force_both_classes = true;
  opt.min_n = 2;
  for (int rep = 0; rep < 200; ++rep) {
    const TaskDataset ds = oracles::random_dataset(rng, opt);
    const OperatingPoint op = select_threshold_max_f1(ds);
    const PointMetrics m = point_metrics(confusion_at(ds, op.threshold));
    REQUIRE(m.f1.has_value());
    CHECK(*m.f1 == doctest::Approx(op.tuning_f1).epsilon(1e-12));
  }
}

TEST_CASE("monotone transforms carry the operating point over exactly") {
  std::mt19937_64 rng(54);
  oracles::RandomDatasetOptions opt;
  opt.force_both_classes = true;
  opt.min_n = 2;
  for (int rep = 0; rep < 150; ++rep) {
    const TaskDataset tuning = oracles::random_dataset(rng, opt);
    const TaskDataset test = oracles::random_dataset(rng, opt);
    const OperatingPoint op = select_threshold_max_f1(tuning);

    const TaskDataset tuning_t(tuning.task_name(), tuning.labels(), tuning.scores().cube());
    const TaskDataset test_t(test.task_name(), test.labels(), test.scores().cube());
    const OperatingPoint op_t = select_threshold_max_f1(tuning_t);

    CHECK(confusion_at(test_t, op_t.threshold) == confusion_at(test, op.threshold));
    CHECK(op_t.tuning_f1 == op.tuning_f1);
  }
}

TEST_CASE("recall and specificity ignore negative duplication; precision cannot rise") {
  std::mt19937_64 rng(55);
  oracles::RandomDatasetOptions opt;
  opt.force_both_classes = true;
  opt.min_n = 4;
  opt.max_n = 100;
  for (int rep = 0; rep < 100; ++rep) {
    const TaskDataset ds = oracles::random_dataset(rng, opt);
    std::vector<LabeledScore> dup = ds.samples();
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
      if (!ds.positive(i)) dup.push_back(ds.sample(i));
    }
    const TaskDataset ds2(ds.task_name(), dup);

    const double t = 0.05 * static_cast<double>(rng() % 21);
    const PointMetrics a = point_metrics(confusion_at(ds, t));
    const PointMetrics b = point_metrics(confusion_at(ds2, t));
    CHECK(a.recall == b.recall);
    CHECK(a.specificity == b.specificity);
    if (a.precision && b.precision) CHECK(*b.precision <= *a.precision + 1e-12);
  }
}

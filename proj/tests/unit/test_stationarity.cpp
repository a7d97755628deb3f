#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "recsel/errors.hpp"
#include "recsel/estimators.hpp"
#include "recsel/montecarlo.hpp"
#include "recsel/stationarity.hpp"
#include "recsel/stats.hpp"

using namespace recsel;

namespace {

// P(T > t) for n = 2, where T = (W - 1)^2 and W = Z2 / Z1 has cdf w / (1 + w).
double null_survival_n2(double t) {
  const double s = std::sqrt(t);
  const auto F = [](double w) { return w <= 0.0 ? 0.0 : w / (1.0 + w); };
  return 1.0 - (F(1.0 + s) - F(1.0 - s));
}

double null_quantile_n2(double alpha) {
  double lo = 0.0, hi = 1e12;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    (null_survival_n2(mid) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double oracle_statistic(const std::vector<double>& th) {
  double s = 0.0;
  for (std::size_t i = 1; i < th.size(); ++i) {
    const double r = th[i] / th[i - 1] - 1.0;
    s += r * r;
  }
  return s / static_cast<double>(th.size() - 1);
}

}  // namespace

TEST(Statistic, Examples) {
  EXPECT_DOUBLE_EQ(test_statistic(std::vector<double>{5, 5, 5}), 0.0);
  EXPECT_DOUBLE_EQ(test_statistic(std::vector<double>{1, 2}), 1.0);
}

TEST(Statistic, Errors) {
  EXPECT_THROW(test_statistic(std::vector<double>{1.0}), UsageError);
  EXPECT_THROW(test_statistic(std::vector<double>{1.0, 0.0, 2.0}), DomainError);
  EXPECT_THROW(test_statistic(std::vector<double>{1.0, -2.0}), DomainError);
}

TEST(Statistic, ScaleInvariant) {
  const std::vector<double> th{0.3, 1.7, 2.2, 0.9, 4.1};
  const double t = test_statistic(th);
  for (double c : {1e-3, 0.7, 13.0, 1e5}) {
    std::vector<double> scaled;
    for (double x : th) scaled.push_back(c * x);
    EXPECT_NEAR(test_statistic(scaled), t, 1e-13 * t);
  }
}

TEST(Statistic, RainfallPath) {
  const FamilySpec f = FamilySpec::custom_hazard(PowerCurve{4.0, 1.9, 1.0});
  std::vector<double> keys;
  for (double x : {12.69, 12.84, 18.72, 21.96, 23.92, 27.16, 31.28, 34.04}) {
    keys.push_back(std::pow(x - 4.0, 1.9));
  }
  std::vector<double> th{keys[0]};
  for (std::size_t i = 1; i < keys.size(); ++i) th.push_back(keys[i] - keys[i - 1]);
  std::vector<double> sel_keys;
  for (double x : {12.69, 12.84, 18.72, 21.96, 23.92, 27.16, 31.28, 34.04}) {
    sel_keys.push_back(selection_key(f, x));
  }
  const double t = test_statistic(umvue_path(sel_keys, f));
  EXPECT_NEAR(t, oracle_statistic(th), 1e-9 * t);
  EXPECT_NEAR(t, 358.892, 1e-3);
  EXPECT_EQ(decide(t, 8, 0.05, bundled_reference_table()), Decision::FailToReject);
}

TEST(NullLaw, DegenerateRatio) {
  // Z2 = Z1 gives a zero statistic.
  EXPECT_DOUBLE_EQ(test_statistic(std::vector<double>{0.37, 0.37}), 0.0);
}

TEST(NullLaw, TwoRecordQuantilesMatchClosedForm) {
  auto sample = simulate_null_sample(2, 100000, 70);
  const double m = static_cast<double>(sample.size());
  for (double alpha : {0.5, 0.25, 0.1, 0.05}) {
    const double t = null_quantile_n2(alpha);
    if (alpha <= 0.2) {
      EXPECT_NEAR(t, std::pow(1.0 / alpha - 2.0, 2), 1e-6 * t);
    }
    double above = 0.0;
    for (double x : sample) above += x > t ? 1.0 : 0.0;
    EXPECT_NEAR(above / m, alpha, 4.0 * std::sqrt(alpha * (1 - alpha) / m)) << alpha;
  }
}

TEST(NullLaw, QuantilesStabilize) {
  const std::vector<int> ns{4};
  const std::vector<double> alphas{0.5, 0.1};
  const auto a = critical_values(ns, alphas, 50000, 71);
  const auto b = critical_values(ns, alphas, 50000, 72);
  EXPECT_NEAR(a.at(4, 0.5) / b.at(4, 0.5), 1.0, 0.05);
  EXPECT_NEAR(a.at(4, 0.1) / b.at(4, 0.1), 1.0, 0.1);
}

TEST(CriticalValues, PublishedCells) {
  const std::vector<int> ns{2, 8};
  const std::vector<double> alphas{0.05, 0.1};
  const auto t = critical_values(ns, alphas, 100000, kDefaultSeed);
  EXPECT_NEAR(t.at(2, 0.1), 64.61, 0.1 * 64.61);
  EXPECT_NEAR(t.at(2, 0.1), 64.0, 0.1 * 64.0);
  EXPECT_NEAR(t.at(8, 0.05), 2698.59, 0.1 * 2698.59);
}

TEST(CriticalValues, IncreasingInN) {
  std::vector<int> ns;
  for (int n = 2; n <= 10; ++n) ns.push_back(n);
  const std::vector<double> alphas{0.05, 0.1};
  const auto t = critical_values(ns, alphas, 50000, 73);
  t.validate();
  for (double a : alphas) {
    for (int n = 3; n <= 10; ++n) EXPECT_GT(t.at(n, a), t.at(n - 1, a)) << "n=" << n << " a=" << a;
  }
}

TEST(CriticalValues, MedianColumnAndErrors) {
  const std::vector<int> ns{3};
  const std::vector<double> half{0.5};
  EXPECT_GT(critical_values(ns, half, 1000, 1).at(3, 0.5), 0.0);
  EXPECT_THROW(critical_values(ns, half, 999, 1), UsageError);
  const std::vector<double> bad{1.0};
  EXPECT_THROW(critical_values(ns, bad, 1000, 1), UsageError);
}

TEST(CriticalValues, DeterministicAcrossThreads) {
  const std::vector<int> ns{2, 5};
  const std::vector<double> alphas{0.025, 0.1};
  const auto ref = critical_values(ns, alphas, 20000, 74, 1);
  for (unsigned threads : {4u, 8u}) {
    EXPECT_EQ(critical_values_to_csv(critical_values(ns, alphas, 20000, 74, threads)),
              critical_values_to_csv(ref));
  }
}

TEST(Decide, Boundaries) {
  const auto ref = bundled_reference_table();
  EXPECT_EQ(decide(279.14, 8, 0.05, ref), Decision::FailToReject);
  EXPECT_EQ(decide(ref.at(8, 0.05), 8, 0.05, ref), Decision::FailToReject);
  EXPECT_EQ(decide(1e9, 3, 0.01, ref), Decision::Reject);
  EXPECT_THROW(decide(1.0, 11, 0.05, ref), UsageError);
  EXPECT_THROW(decide(1.0, 8, 0.2, ref), UsageError);
}

TEST(Decide, NullCalibration) {
  const std::vector<int> ns{5};
  const std::vector<double> alphas{0.05};
  const auto table = critical_values(ns, alphas, 100000, 75);
  const auto draws = simulate_null_sample(5, 20000, 76);
  double rejected = 0.0;
  for (double t : draws) rejected += decide(t, 5, 0.05, table) == Decision::Reject ? 1.0 : 0.0;
  const double m = static_cast<double>(draws.size());
  EXPECT_NEAR(rejected / m, 0.05, 3.0 * std::sqrt(0.05 * 0.95 / m) + std::sqrt(0.05 * 0.95 / 1e5) * 3.0);
}

TEST(Decide, ExplodingSpacingsReject) {
  const std::vector<int> ns{5};
  const std::vector<double> alphas{0.01};
  const auto table = critical_values(ns, alphas, 100000, kDefaultSeed);
  const std::vector<double> th{1.0, 1e3, 1e6, 1e9, 1e12};
  EXPECT_EQ(decide(test_statistic(th), 5, 0.01, table), Decision::Reject);
}

TEST(Decide, StatisticFromRecordsHasNullLaw) {
  SimulationConfig c;
  c.family = FamilySpec::hazard(Member::Exponential);
  c.theta_model = ParameterSequenceModel::make_constant(2.5);
  c.n_target = 4;
  c.replications = 10000;
  c.master_seed = 77;
  std::vector<double> from_records;
  for (const auto& r : run_replicates(c)) {
    from_records.push_back(test_statistic(umvue_path(r.keys, c.family)));
  }
  const auto null_draws = simulate_null_sample(4, 10000, 78);
  const double critical = 1.628 * std::sqrt(2.0 / 10000.0);
  EXPECT_LT(ks_distance_two_sample(from_records, null_draws), critical);
}

TEST(Table, CsvRoundTrip) {
  const auto ref = bundled_reference_table();
  const auto back = critical_values_from_csv(critical_values_to_csv(ref));
  EXPECT_EQ(back.n_values, ref.n_values);
  EXPECT_EQ(back.alphas, ref.alphas);
  for (int n : ref.n_values) {
    for (double a : ref.alphas) EXPECT_NEAR(back.at(n, a), ref.at(n, a), 5e-6 * ref.at(n, a));
  }
  EXPECT_THROW(critical_values_from_csv("n,0.05\n2,abc\n"), DataError);
  EXPECT_THROW(critical_values_from_csv("# only a comment\n"), DataError);
}

TEST(Table, ValidateChecksMonotoneRows) {
  CriticalValueTable t;
  t.n_values = {2};
  t.alphas = {0.05, 0.1};
  t.quantiles = {{10.0, 20.0}};
  EXPECT_THROW(t.validate(), DataError);
  t.quantiles = {{20.0, 10.0}};
  EXPECT_NO_THROW(t.validate());
  EXPECT_NO_THROW(bundled_reference_table().validate());
}

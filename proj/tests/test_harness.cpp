#include <gtest/gtest.h>

#include <cmath>

#include "hocount/estimation.hpp"
#include "hocount/harness.hpp"

using namespace hocount;

namespace {

ExperimentPlan plan_at(double lambda, double v_kmh, std::size_t trials, std::uint64_t seed) {
  ExperimentPlan plan;
  plan.grid = {Scenario::from_kmh(lambda, v_kmh, 12.0)};
  plan.trials = trials;
  plan.master_seed = seed;
  return plan;
}

double mean_of(const std::vector<int>& v) {
  double s = 0;
  for (int x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

TEST(Harness, IndependentOfThreadCount) {
  ExperimentPlan plan = plan_at(500.0, 60.0, 2000, 42);
  plan.mobility = RwpMobility{25.0};
  const auto one = simulate_trials(plan, 0);
  plan.threads = 3;
  const auto three = simulate_trials(plan, 0);
  ASSERT_EQ(one.size(), three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].h, three[i].h);
    EXPECT_EQ(one[i].v_hat, three[i].v_hat);
  }
}

TEST(Harness, SeedChangesOutcome) {
  EXPECT_NE(simulate_counts(plan_at(500.0, 60.0, 500, 1), 0), simulate_counts(plan_at(500.0, 60.0, 500, 2), 0));
}

TEST(Harness, MeanCountMatchesTheory) {
  EXPECT_NEAR(mean_of(simulate_counts(plan_at(1000.0, 60.0, 100000, 7), 0)), 8.05, 0.05);
}

TEST(Harness, DistributionsSeparateWithSpeed) {
  const auto slow = run_pmf_experiment(plan_at(100.0, 30.0, 50000, 3)).front();
  const auto fast = run_pmf_experiment(plan_at(100.0, 60.0, 50000, 4)).front();
  EXPECT_LT(total_variation(slow, fast), 0.7);
  EXPECT_GT(total_variation(slow, fast), 0.1);
}

TEST(Harness, RmseNearMvuStandardDeviation) {
  const auto rec = run_rmse_experiment(plan_at(500.0, 60.0, 100000, 11)).front();
  EXPECT_NEAR(rec.rmse_kmh, 14.54, 0.1 * 14.54);
  EXPECT_LT(std::fabs(rec.bias_kmh), 0.5);
  EXPECT_NEAR(rec.mean_h, 5.694, 0.05);
}

TEST(Harness, NearlyStraightRwpMatchesLinear) {
  ExperimentPlan lin = plan_at(500.0, 60.0, 50000, 12);
  ExperimentPlan rwp = lin;
  rwp.mobility = RwpMobility{1e-6};
  const double a = run_rmse_experiment(lin).front().rmse_kmh;
  const double b = run_rmse_experiment(rwp).front().rmse_kmh;
  EXPECT_NEAR(b, a, 0.05 * a);
}

TEST(Harness, ClusterAndHardcoreRun) {
  ClusterParams cp{50.0, 500.0, 0.2};
  ExperimentPlan cl;
  cl.grid = {Scenario::from_kmh(cp.equivalent_intensity(), 60.0, 12.0)};
  cl.deployment = ClusterDeployment{cp};
  cl.trials = 2000;
  const auto rc = run_rmse_experiment(cl).front();
  EXPECT_GT(rc.mean_h, 0.0);
  ExperimentPlan hc = plan_at(500.0, 60.0, 2000, 13);
  hc.deployment = HcpDeployment{0.5};
  EXPECT_NEAR(run_rmse_experiment(hc).front().mean_h, 5.7, 1.0);
}

TEST(Harness, ProfileTruthIsMeanSpeed) {
  ExperimentPlan plan = plan_at(500.0, 60.0, 200, 14);
  plan.mobility = ProfileMobility{{{6.0, kmh_to_canonical(30.0)}, {6.0, kmh_to_canonical(90.0)}}};
  for (const TrialOutcome& o : simulate_trials(plan, 0)) EXPECT_NEAR(canonical_to_kmh(o.v_true), 60.0, 1e-9);
}

TEST(Harness, RejectsInvalidPlans) {
  ExperimentPlan empty;
  EXPECT_THROW(empty.validate(), std::invalid_argument);
  ExperimentPlan zero = plan_at(500.0, 60.0, 0, 1);
  EXPECT_THROW(zero.validate(), std::invalid_argument);
  ExperimentPlan cl = plan_at(500.0, 60.0, 10, 1);
  cl.deployment = ClusterDeployment{{50.0, 500.0, 0.2}};
  EXPECT_THROW(cl.validate(), std::invalid_argument);
  ExperimentPlan hc = plan_at(500.0, 60.0, 10, 1);
  hc.deployment = HcpDeployment{1.5};
  EXPECT_THROW(hc.validate(), std::invalid_argument);
  ExperimentPlan rwp = plan_at(500.0, 60.0, 10, 1);
  rwp.mobility = RwpMobility{1.0};
  EXPECT_THROW(run_pmf_experiment(rwp), std::invalid_argument);
}

TEST(Harness, MsdFrequencies) {
  ExperimentPlan plan;
  plan.grid = {Scenario::from_kmh(1000.0, 10.0, 12.0), Scenario::from_kmh(1000.0, 120.0, 12.0)};
  plan.trials = 20000;
  const MsdConfig cfg = MsdConfig::from_kmh(40, 80, 12.0, 1000.0);
  const auto f = run_msd_experiment(plan, cfg);
  ASSERT_EQ(f.size(), 2u);
  for (const StateProbs& p : f) EXPECT_NEAR(p.total(), 1.0, 1e-12);
  EXPECT_GT(f[0].p_low, 0.95);
  EXPECT_GT(f[1].p_high, 0.9);
}

TEST(Harness, MsdFrequenciesMatchModel) {
  const MsdConfig cfg = MsdConfig::from_kmh(40, 80, 12.0, 1000.0);
  const Scenario s = Scenario::from_kmh(1000.0, 60.0, 12.0);
  ExperimentPlan plan;
  plan.grid = {s};
  plan.trials = 100000;
  plan.master_seed = 15;
  const StateProbs mc = run_msd_experiment(plan, cfg).front();
  const StateProbs model = state_probabilities(s, cfg);
  EXPECT_NEAR(mc.p_low, model.p_low, 0.02);
  EXPECT_NEAR(mc.p_med, model.p_med, 0.02);
  EXPECT_NEAR(mc.p_high, model.p_high, 0.02);
}

TEST(TripDemo, ConstantSpeedWindows) {
  const auto w = run_trip_demo({{120.0, kmh_to_canonical(60.0)}}, 12.0, 1000.0, 5);
  ASSERT_EQ(w.size(), 10u);
  double mean_hat = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_EQ(w[i].index, static_cast<int>(i));
    EXPECT_DOUBLE_EQ(w[i].t_start, 12.0 * static_cast<double>(i));
    EXPECT_NEAR(canonical_to_kmh(w[i].true_mean_speed), 60.0, 1e-9);
    EXPECT_DOUBLE_EQ(w[i].v_hat, mvu_estimate(w[i].h, 12.0, 1000.0).v_hat);
    mean_hat += canonical_to_kmh(w[i].v_hat);
  }
  EXPECT_NEAR(mean_hat / 10.0, 60.0, 20.0);
}

TEST(TripDemo, DropsPartialWindow) {
  EXPECT_EQ(run_trip_demo({{50.0, 0.01}}, 12.0, 500.0, 1).size(), 4u);
}

TEST(TripDemo, StandingStillIsLow) {
  for (const TripWindow& w : run_trip_demo({{60.0, 0.0}}, 12.0, 500.0, 2)) {
    EXPECT_EQ(w.h, 0);
    EXPECT_EQ(w.v_hat, 0.0);
    EXPECT_EQ(w.state, MobilityState::low);
  }
}

TEST(TripDemo, LongerWindowsTrackRampBetter) {
  const SpeedProfile ramp = ramp_profile(0.0, 100.0, 180.0);
  double err12 = 0, err30 = 0;
  int n12 = 0, n30 = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    for (const TripWindow& w : run_trip_demo(ramp, 12.0, 500.0, s)) {
      err12 += std::fabs(w.v_hat - w.true_mean_speed);
      ++n12;
    }
    for (const TripWindow& w : run_trip_demo(ramp, 30.0, 500.0, s)) {
      err30 += std::fabs(w.v_hat - w.true_mean_speed);
      ++n30;
    }
  }
  EXPECT_LT(err30 / n30, err12 / n12);
}

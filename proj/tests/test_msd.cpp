#include <gtest/gtest.h>

#include <cmath>

#include "hocount/estimation.hpp"
#include "hocount/msd.hpp"
#include "hocount/pmf.hpp"

using namespace hocount;

TEST(Thresholds, Values) {
  EXPECT_EQ(handover_thresholds(kmh_to_canonical(40), kmh_to_canonical(80), 12.0, 500.0), std::make_pair(3, 7));
  EXPECT_EQ(handover_thresholds(kmh_to_canonical(40), kmh_to_canonical(80), 12.0, 1000.0), std::make_pair(5, 10));
  EXPECT_THROW(handover_thresholds(0.01, 0.01, 12.0, 500.0), std::invalid_argument);
  EXPECT_THROW(handover_thresholds(0.0, 0.01, 12.0, 500.0), std::invalid_argument);
}

TEST(Thresholds, Ordered) {
  for (double lambda : {50.0, 100.0, 500.0, 1000.0, 5000.0})
    for (double vl = 5; vl < 100; vl += 5) {
      const auto [hl, hu] = handover_thresholds(kmh_to_canonical(vl), kmh_to_canonical(2 * vl), 12.0, lambda);
      EXPECT_LE(hl, hu);
    }
}

TEST(DetectState, Boundaries) {
  const MsdConfig cfg = MsdConfig::from_kmh(40, 80, 12.0, 500.0);
  EXPECT_EQ(detect_state(0.0, cfg), MobilityState::low);
  EXPECT_EQ(detect_state(cfg.v_l, cfg), MobilityState::low);
  EXPECT_EQ(detect_state(std::nextafter(cfg.v_l, 1.0), cfg), MobilityState::medium);
  EXPECT_EQ(detect_state(cfg.v_u, cfg), MobilityState::medium);
  EXPECT_EQ(detect_state(kmh_to_canonical(100), cfg), MobilityState::high);
  EXPECT_STREQ(to_string(MobilityState::medium), "S_M");
  EXPECT_THROW(detect_state(-1e-9, cfg), std::invalid_argument);
}

// Detecting on v_hat and thresholding h must agree for every count.
TEST(Thresholds, ConsistentWithDetection) {
  std::vector<MsdConfig> cfgs;
  for (double lambda : {100.0, 250.0, 500.0, 1000.0, 2000.0})
    for (double T : {5.0, 12.0, 30.0}) cfgs.push_back(MsdConfig::from_kmh(40, 80, T, lambda));
  // Thresholds landing exactly on an estimator value.
  const double lambda = 1000.0, T = 12.0;
  cfgs.push_back(MsdConfig::make(mvu_estimate(5, T, lambda).v_hat, mvu_estimate(10, T, lambda).v_hat, T, lambda));
  cfgs.push_back(MsdConfig::make(mvu_estimate(3, T, 490.0).v_hat, mvu_estimate(7, T, 490.0).v_hat, T, 490.0));
  for (const MsdConfig& cfg : cfgs) {
    for (int h = 0; h <= 50; ++h) {
      const MobilityState s = detect_state(mvu_estimate(h, cfg.T, cfg.lambda).v_hat, cfg);
      EXPECT_EQ(s == MobilityState::low, h <= cfg.h_l) << h;
      EXPECT_EQ(s == MobilityState::medium, h > cfg.h_l && h <= cfg.h_u) << h;
      EXPECT_EQ(s == MobilityState::high, h > cfg.h_u) << h;
    }
  }
}

TEST(StateProbabilities, WorkedExample) {
  const MsdConfig cfg = MsdConfig::from_kmh(40, 80, 12.0, 1000.0);
  const StateProbs p = state_probabilities(Scenario::from_kmh(1000.0, 60.0, 12.0), cfg);
  EXPECT_NEAR(p.p_low, 0.047, 0.02);
  EXPECT_NEAR(p.p_med, 0.8821, 0.02);
  EXPECT_NEAR(p.p_high, 0.0709, 0.02);
}

TEST(StateProbabilities, SlowUserIsLow) {
  const MsdConfig cfg = MsdConfig::from_kmh(40, 80, 12.0, 1000.0);
  EXPECT_GT(state_probabilities(Scenario::from_kmh(1000.0, 10.0, 12.0), cfg).p_low, 0.95);
}

TEST(StateProbabilities, PartitionOfGaussianMass) {
  for (double lambda : {100.0, 200.0, 500.0, 1000.0})
    for (double v = 5; v <= 150; v += 5) {
      const Scenario s = Scenario::from_kmh(lambda, v, 12.0);
      const StateProbs p = state_probabilities(s, MsdConfig::from_kmh(40, 80, 12.0, lambda));
      const GaussianApprox g = gaussian_params(s.d_sqrt_lambda());
      const int h_star = static_cast<int>(std::ceil(g.mu + 12 * std::sqrt(g.sigma2)));
      double mass = 0;
      for (int h = 0; h <= h_star; ++h) mass += gaussian_pmf(h, g);
      EXPECT_NEAR(p.total(), mass, 1e-12);
      EXPECT_NEAR(gaussian_total_mass(s), mass, 1e-12);
      // The Gaussian mass is not renormalized, so single states may exceed 1.
      for (double q : {p.p_low, p.p_med, p.p_high}) EXPECT_GE(q, 0.0);
    }
}

TEST(StateProbabilities, TransitionSteepensWithDensity) {
  double last_width = INFINITY;
  for (double lambda : {100.0, 200.0, 500.0, 1000.0}) {
    const MsdConfig cfg = MsdConfig::from_kmh(40, 80, 12.0, lambda);
    double lo = NAN, hi = NAN;
    for (double v = 1; v <= 150; v += 0.25) {
      const double p = state_probabilities(Scenario::from_kmh(lambda, v, 12.0), cfg).p_low;
      if (std::isnan(hi) && p < 0.9) hi = v;
      if (std::isnan(lo) && p < 0.1) lo = v;
    }
    const double width = lo - hi;
    EXPECT_LT(width, last_width) << lambda;
    last_width = width;
  }
}

TEST(Detection, WorkedExample) {
  const Detection d = detection_probability(Scenario::from_kmh(1000.0, 60.0, 12.0), MsdConfig::from_kmh(40, 80, 12.0, 1000.0));
  EXPECT_NEAR(d.p_d, 0.8821, 0.02);
  EXPECT_NEAR(d.p_fa, 0.1179, 0.02);
}

TEST(Detection, DenseNetworkDetectsReliably) {
  const Detection d = detection_probability(Scenario::from_kmh(1e4, 60.0, 12.0), MsdConfig::from_kmh(40, 80, 12.0, 1e4));
  EXPECT_GT(d.p_d, 0.99);
}

TEST(Detection, CoinFlipAtThreshold) {
  for (double lambda : {500.0, 1000.0}) {
    const MsdConfig cfg = MsdConfig::from_kmh(40, 80, 12.0, lambda);
    const Detection d = detection_probability(Scenario(lambda, cfg.v_l, 12.0), cfg);
    EXPECT_NEAR(d.p_d, 0.5, 0.15) << lambda;
  }
}

TEST(Detection, FalseAlarmIsRemainingMass) {
  const Scenario s = Scenario::from_kmh(300.0, 25.0, 12.0);
  const MsdConfig cfg = MsdConfig::from_kmh(40, 80, 12.0, 300.0);
  const Detection d = detection_probability(s, cfg);
  EXPECT_NEAR(d.p_d + d.p_fa, gaussian_total_mass(s), 1e-15);
  EXPECT_DOUBLE_EQ(d.p_d, state_probabilities(s, cfg).p_low);
}

TEST(AverageDetection, SweepOptimum) {
  const MsdConfig base = MsdConfig::from_kmh(40, 80, 12.0, 500.0);
  const auto rows = sweep_thresholds(base, 15);
  EXPECT_EQ(rows.size(), 16u * 15u / 2u);
  const ThresholdSweepRow best = best_thresholds(rows);
  EXPECT_EQ(best.h_l, 3);
  EXPECT_EQ(best.h_u, 7);
  EXPECT_NEAR(best.avg_p_d, 0.797, 0.02);
  EXPECT_EQ(best.h_l, base.h_l);
  EXPECT_EQ(best.h_u, base.h_u);
  EXPECT_LT(average_detection_probability(0, 1, base), best.avg_p_d);
  EXPECT_THROW(average_detection_probability(3, 3, base), std::invalid_argument);
}

TEST(AverageDetection, AnalyticThresholdsAreOptimalAtHigherDensity) {
  const MsdConfig base = MsdConfig::from_kmh(40, 80, 12.0, 1000.0);
  const ThresholdSweepRow best = best_thresholds(sweep_thresholds(base, 15));
  EXPECT_EQ(best.h_l, base.h_l);
  EXPECT_EQ(best.h_u, base.h_u);
}

TEST(AverageDetection, OverrideMatchesExplicitAverage) {
  const MsdConfig base = MsdConfig::from_kmh(40, 80, 12.0, 500.0);
  const MsdConfig cfg = base.with_thresholds(2, 9);
  double sum = 0;
  int n = 0;
  for (int v = 10; v <= 120; ++v, ++n) sum += detection_probability(Scenario::from_kmh(500.0, v, 12.0), cfg).p_d;
  EXPECT_NEAR(average_detection_probability(2, 9, base), sum / n, 1e-14);
}

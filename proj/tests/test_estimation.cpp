#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hocount/estimation.hpp"
#include "hocount/harness.hpp"
#include "hocount/pmf.hpp"
#include "oracles.hpp"

using namespace hocount;

namespace {

std::vector<int> simulated_counts(const Scenario& scn, std::size_t trials, std::uint64_t seed) {
  ExperimentPlan plan;
  plan.grid = {scn};
  plan.trials = trials;
  plan.master_seed = seed;
  return simulate_counts(plan, 0);
}

}  // namespace

TEST(Mvu, Estimates) {
  EXPECT_EQ(mvu_estimate(0, 12.0, 500.0).v_hat, 0.0);
  const VelocityEstimate e = mvu_estimate(5, 12.0, 500.0);
  EXPECT_NEAR(e.v_hat, 0.014635, 5e-7);
  EXPECT_NEAR(e.v_hat_kmh(), 52.7, 0.05);
  EXPECT_EQ(e.h, 5);
  EXPECT_NEAR(mvu_estimate(8, 12.0, 1000.0).v_hat_kmh(), 59.6, 0.05);
  EXPECT_THROW(mvu_estimate(-1, 12.0, 500.0), std::invalid_argument);
  EXPECT_THROW(mvu_estimate(1, 0.0, 500.0), std::invalid_argument);
}

TEST(Mvu, InvertsMeanHandovers) {
  const Scenario s = Scenario::from_kmh(640.0, 75.0, 20.0);
  const double mu = mean_handovers(s);
  // v_hat is linear in h, so plugging the mean returns v.
  const double slope = mvu_estimate(1, s.T(), s.lambda()).v_hat;
  EXPECT_NEAR(slope * mu, s.v(), 1e-15);
}

TEST(Mvu, Variance) {
  EXPECT_NEAR(canonical_to_kmh(std::sqrt(mvu_variance(Scenario::from_kmh(500.0, 60.0, 12.0)))), 14.54, 0.005);
  EXPECT_NEAR(canonical_to_kmh(std::sqrt(mvu_variance(Scenario::from_kmh(100.0, 120.0, 12.0)))), 30.8, 0.05);
  EXPECT_THROW(mvu_variance(Scenario(500.0, 0.0, 12.0)), std::invalid_argument);
}

TEST(Mvu, UnbiasedInSimulation) {
  const Scenario scn = Scenario::from_kmh(1000.0, 60.0, 12.0);
  const std::vector<int> counts = simulated_counts(scn, 100000, 2024);
  double s = 0, s2 = 0;
  for (int h : counts) {
    const double v = mvu_estimate(h, scn.T(), scn.lambda()).v_hat;
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(counts.size());
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, scn.v(), 3 * se);
}

TEST(CrlbGaussian, ReferenceValues) {
  const CrlbResult r = crlb_gaussian(Scenario::from_kmh(500.0, 120.0, 12.0));
  EXPECT_EQ(r.method, CrlbMethod::gaussian);
  EXPECT_NEAR(r.std_kmh(), 20.2, 0.5);
  EXPECT_LE(crlb_gaussian(Scenario::from_kmh(100.0, 120.0, 12.0)).std_kmh(), 31.0);
  EXPECT_NEAR(crlb_gaussian(Scenario::from_kmh(500.0, 60.0, 12.0)).std_kmh(), 14.3, 0.1);
  EXPECT_THROW(crlb_gaussian(Scenario(500.0, 0.0, 12.0)), std::invalid_argument);
}

TEST(CrlbGaussian, ClosedFormByHand) {
  const Scenario s = Scenario::from_kmh(300.0, 45.0, 15.0);
  const double x = s.d_sqrt_lambda();
  const double mu = 4 * x / std::numbers::pi;
  const double sig2 = 0.07 + 0.41 * x;
  const double fisher = mu * mu / (s.v() * s.v() * sig2) + 0.5 * std::pow(0.41 * s.t_sqrt_lambda() / sig2, 2);
  EXPECT_NEAR(crlb_gaussian(s).variance, 1.0 / fisher, 1e-15);
}

TEST(CrlbGaussian, MonotoneTrends) {
  const std::vector<double> speeds{10, 20, 40, 60, 80, 100, 120};
  const std::vector<double> lambdas{100, 200, 500, 1000};
  const std::vector<double> windows{5, 12, 20, 30, 50};
  for (double l : lambdas)
    for (double t : windows)
      for (std::size_t i = 1; i < speeds.size(); ++i)
        EXPECT_GT(crlb_gaussian(Scenario::from_kmh(l, speeds[i], t)).variance,
                  crlb_gaussian(Scenario::from_kmh(l, speeds[i - 1], t)).variance);
  for (double v : speeds)
    for (double t : windows)
      for (std::size_t i = 1; i < lambdas.size(); ++i)
        EXPECT_LT(crlb_gaussian(Scenario::from_kmh(lambdas[i], v, t)).variance,
                  crlb_gaussian(Scenario::from_kmh(lambdas[i - 1], v, t)).variance);
  for (double v : speeds)
    for (double l : lambdas)
      for (std::size_t i = 1; i < windows.size(); ++i)
        EXPECT_LT(crlb_gaussian(Scenario::from_kmh(l, v, windows[i])).variance,
                  crlb_gaussian(Scenario::from_kmh(l, v, windows[i - 1])).variance);
}

TEST(CrlbGaussian, MvuVarianceDominates) {
  for (double l = 100; l <= 1000; l += 100)
    for (double v = 10; v <= 120; v += 10)
      for (double t : {5.0, 12.0, 30.0}) {
        const Scenario s = Scenario::from_kmh(l, v, t);
        EXPECT_GE(mvu_variance(s), crlb_gaussian(s).variance);
      }
}

TEST(GammaScore, MatchesFiniteDifference) {
  const Scenario base = Scenario::from_kmh(500.0, 60.0, 12.0);
  for (int h = 2; h <= 12; ++h) {
    const auto logf = [&](double v) { return log_gamma_pmf(h, Scenario(base.lambda(), v, base.T())); };
    const double fd = oracle::central_difference(logf, base.v(), 1e-4 * base.v());
    const double analytic = dlogf_dv_gamma(h, base);
    EXPECT_LT(std::fabs(analytic - fd) / std::fabs(fd), 1e-4) << "h=" << h << " analytic=" << analytic << " fd=" << fd;
  }
}

TEST(GammaScore, MatchesHigherOrderDifferenceAcrossRange) {
  for (double lambda : {100.0, 1000.0})
    for (double v_kmh : {15.0, 90.0}) {
      const Scenario base = Scenario::from_kmh(lambda, v_kmh, 12.0);
      const GammaApprox g = gamma_params(base.d_sqrt_lambda());
      const int hi = static_cast<int>(3 * g.alpha / g.beta) + 3;
      for (int h = 0; h <= hi; ++h) {
        const auto logf = [&](double v) { return log_gamma_pmf(h, Scenario(lambda, v, 12.0)); };
        const double fd = oracle::central_difference4(logf, base.v(), 1e-3 * base.v());
        const double analytic = dlogf_dv_gamma(h, base);
        EXPECT_NEAR(analytic, fd, 1e-5 * std::max(1.0, std::fabs(fd))) << lambda << " " << v_kmh << " h=" << h;
      }
    }
}

TEST(GammaScore, ZeroMean) {
  const Scenario s = Scenario::from_kmh(500.0, 60.0, 12.0);
  const GammaApprox g = gamma_params(s.d_sqrt_lambda());
  double mean = 0, mass = 0;
  for (int h = 0; h < 200; ++h) {
    const double f = gamma_pmf(h, g);
    if (f < 1e-300) break;
    mean += f * dlogf_dv_gamma(h, s);
    mass += f;
  }
  EXPECT_NEAR(mass, 1.0, 1e-12);
  EXPECT_NEAR(mean, 0.0, 1e-3);
}

TEST(GammaScore, SignFlipsAroundMode) {
  const Scenario s = Scenario::from_kmh(500.0, 60.0, 12.0);
  EXPECT_LT(dlogf_dv_gamma(1, s), 0.0);
  EXPECT_LT(dlogf_dv_gamma(3, s), 0.0);
  EXPECT_GT(dlogf_dv_gamma(9, s), 0.0);
  EXPECT_GT(dlogf_dv_gamma(14, s), 0.0);
  int flips = 0;
  for (int h = 1; h < 20; ++h)
    if ((dlogf_dv_gamma(h, s) > 0) != (dlogf_dv_gamma(h - 1, s) > 0)) ++flips;
  EXPECT_EQ(flips, 1);
}

TEST(GammaScore, RejectsInvalid) {
  EXPECT_THROW(dlogf_dv_gamma(3, Scenario(500.0, 0.0, 12.0)), std::invalid_argument);
  EXPECT_THROW(dlogf_dv_gamma(-1, Scenario::from_kmh(500.0, 60.0, 12.0)), std::invalid_argument);
  EXPECT_THROW(dlogf_dv_gamma(5000, Scenario::from_kmh(500.0, 60.0, 12.0)), std::domain_error);
}

TEST(CrlbGammaAsymptotic, CloseToGaussianBound) {
  const Scenario s = Scenario::from_kmh(500.0, 60.0, 12.0);
  const CrlbResult g = crlb_gamma_asymptotic(simulated_counts(s, 100000, 8), s);
  EXPECT_EQ(g.method, CrlbMethod::gamma_asymptotic);
  const double gauss = crlb_gaussian(s).std_kmh();
  EXPECT_NEAR(g.std_kmh(), gauss, 0.25 * gauss);
}

TEST(CrlbGammaAsymptotic, OrderIndependent) {
  const Scenario s = Scenario::from_kmh(500.0, 60.0, 12.0);
  std::vector<int> counts = simulated_counts(s, 5000, 9);
  const double a = crlb_gamma_asymptotic(counts, s).variance;
  std::reverse(counts.begin(), counts.end());
  std::rotate(counts.begin(), counts.begin() + 1234, counts.end());
  EXPECT_EQ(crlb_gamma_asymptotic(counts, s).variance, a);
}

TEST(CrlbGammaAsymptotic, DecreasesWithWindow) {
  double last = INFINITY;
  for (double T : {12.0, 30.0, 60.0}) {
    const Scenario s = Scenario::from_kmh(500.0, 60.0, T);
    const double var = crlb_gamma_asymptotic(simulated_counts(s, 20000, 10), s).variance;
    EXPECT_LT(var, last) << T;
    last = var;
  }
}

TEST(CrlbGammaAsymptotic, RejectsDegenerateInput) {
  const Scenario s = Scenario::from_kmh(500.0, 60.0, 12.0);
  EXPECT_THROW(crlb_gamma_asymptotic(std::vector<int>(999, 5), s), std::invalid_argument);
  EXPECT_THROW(crlb_gamma_asymptotic(std::vector<int>(1000, 5), Scenario(500.0, 0.0, 12.0)), std::invalid_argument);
}

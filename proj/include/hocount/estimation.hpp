#pragma once

#include <span>

#include "hocount/scenario.hpp"

namespace hocount {

enum class CrlbMethod { gaussian, gamma_asymptotic };

const char* to_string(CrlbMethod method);

struct CrlbResult {
  double variance = 0.0;  // (km/s)^2
  CrlbMethod method = CrlbMethod::gaussian;

  double std_kms() const;
  double std_kmh() const;
};

struct VelocityEstimate {
  double v_hat = 0.0;  // km/s
  int h = 0;
  double T = 0.0;
  double lambda = 0.0;

  double v_hat_kmh() const { return canonical_to_kmh(v_hat); }
};

/// v_hat = pi h / (4 T sqrt(lambda)).
VelocityEstimate mvu_estimate(int h, double T, double lambda);

/// Variance (v sigma / mu)^2 of the MVU estimator under the Gaussian model.
double mvu_variance(const Scenario& scn);

/// Closed-form bound 1 / [(mu / (v sigma))^2 + (0.41 T sqrt(lambda) / sigma^2)^2 / 2].
CrlbResult crlb_gaussian(const Scenario& scn);

/// d/dv log f(h; v) for the gamma count model, as the sum of four terms:
///
///   K beta^a / (a^2 G) [h^a F(beta h) - (h+1)^a F(beta (h+1))]
/// - K / G [g(a, beta h) log(beta h) - g(a, beta (h+1)) log(beta (h+1))]
/// + 0.8 T sqrt(lambda) beta^(a-1) e^(-beta h) [h^a - e^(-beta) (h+1)^a] / (G (0.38 + v T sqrt(lambda))^2)
/// - K psi(a)
///
/// with K = 4 T sqrt(lambda), G = Gamma(a, beta h, beta (h+1)), g the lower
/// incomplete gamma and F(z) = 2F2(a, a; a+1, a+1; -z). Numerators and G are
/// carried divided by Gamma(a).
///
/// Throws std::invalid_argument for v <= 0 or h < 0 and std::domain_error
/// when f(h) < 1e-300.
double dlogf_dv_gamma(int h, const Scenario& scn);

/// log f(h; v) under the gamma model with the fitted (alpha, beta) laws.
double log_gamma_pmf(int h, const Scenario& scn);

/// Asymptotic bound N / sum_m N_m (d/dv log f(m))^2 over the observed counts.
/// Requires at least 1000 samples and v > 0; throws std::runtime_error when
/// the Fisher sum vanishes.
CrlbResult crlb_gamma_asymptotic(std::span<const int> samples, const Scenario& scn);

}  // namespace hocount

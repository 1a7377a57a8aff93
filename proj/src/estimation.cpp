#include "hocount/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hocount/pmf.hpp"
#include "hocount/special_functions.hpp"

namespace hocount {

const char* to_string(CrlbMethod method) {
  return method == CrlbMethod::gaussian ? "gaussian" : "gamma_asymptotic";
}

double CrlbResult::std_kms() const { return std::sqrt(variance); }
double CrlbResult::std_kmh() const { return canonical_to_kmh(std_kms()); }

namespace {

void require_moving(const Scenario& scn, const char* who) {
  if (!(scn.v() > 0.0)) throw std::invalid_argument(std::string(who) + ": v must be positive");
}

constexpr double kCancellationLimit = 1e6;

// E[log t] for t ~ Gamma(a, 1) restricted to [z1, z2].
double conditional_log_mean(double a, double z1, double z2) {
  using boost::math::quadrature::gauss_kronrod;
  const double lz = std::log(z2);
  const auto weight = [&](double t) { return t > 0.0 ? std::exp((a - 1.0) * (std::log(t) - lz) - (t - z2)) : 0.0; };
  const double mass = gauss_kronrod<double, 61>::integrate(weight, z1, z2, 15, 1e-15);
  const double moment = gauss_kronrod<double, 61>::integrate(
      [&](double t) { return t > 0.0 ? weight(t) * std::log(t) : 0.0; }, z1, z2, 15, 1e-15);
  return moment / mass;
}

}  // namespace

VelocityEstimate mvu_estimate(int h, double T, double lambda) {
  if (h < 0) throw std::invalid_argument("mvu_estimate: h must be non-negative");
  if (!(T > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("mvu_estimate: T and lambda must be positive");
  return {std::numbers::pi * h / (4.0 * T * std::sqrt(lambda)), h, T, lambda};
}

double mvu_variance(const Scenario& scn) {
  require_moving(scn, "mvu_variance");
  const GaussianApprox gn = gaussian_params(scn.d_sqrt_lambda());
  const double ratio = scn.v() / gn.mu;
  return ratio * ratio * gn.sigma2;
}

CrlbResult crlb_gaussian(const Scenario& scn) {
  require_moving(scn, "crlb_gaussian");
  const GaussianApprox gn = gaussian_params(scn.d_sqrt_lambda());
  const double mean_term = gn.mu * gn.mu / (scn.v() * scn.v() * gn.sigma2);
  const double var_slope = 0.41 * scn.t_sqrt_lambda() / gn.sigma2;
  return {1.0 / (mean_term + 0.5 * var_slope * var_slope), CrlbMethod::gaussian};
}

double log_gamma_pmf(int h, const Scenario& scn) {
  return std::log(gamma_pmf(h, gamma_params(scn.d_sqrt_lambda())));
}

double dlogf_dv_gamma(int h, const Scenario& scn) {
  require_moving(scn, "dlogf_dv_gamma");
  if (h < 0) throw std::invalid_argument("dlogf_dv_gamma: h must be non-negative");

  const double ts = scn.t_sqrt_lambda();
  const double k = 4.0 * ts;  // d alpha / dv
  const GammaApprox ga = gamma_params(scn.d_sqrt_lambda());
  const double a = ga.alpha;
  const double b = ga.beta;
  const double z1 = b * h;
  const double z2 = b * (h + 1);
  const double lg = std::lgamma(a);

  // G / Gamma(a), i.e. the PMF value.
  const double mass = special::gamma_interval_mass(a, z1, z2);
  if (!(mass >= 1e-300)) throw std::domain_error("dlogf_dv_gamma: PMF underflows at this h");

  // z^a / Gamma(a) and z^a 2F2(..; -z) / Gamma(a); zero at z = 0.
  const auto scaled_pow = [&](double z) { return z > 0.0 ? std::exp(a * std::log(z) - lg) : 0.0; };
  const double hyp1 = scaled_pow(z1) * special::hyp2f2_special(a, z1);
  const double hyp2 = scaled_pow(z2) * special::hyp2f2_special(a, z2);
  const double hyp_term = (hyp1 - hyp2) / (a * a * mass);

  // g(a, z) log z / Gamma(a), with the z -> 0 limit 0.
  const auto gamma_log = [&](double z) {
    return z > 0.0 ? special::regularized_gamma_p(a, z) * std::log(z) : 0.0;
  };
  const double glog1 = gamma_log(z1);
  const double glog2 = gamma_log(z2);
  const double log_term = (glog1 - glog2) / mass;

  // The two pairs cancel in the tails. Past the loss threshold, evaluate their
  // combined value as the conditional mean of log t over [z1, z2].
  const double pair_scale =
      std::max({std::fabs(hyp1) / (a * a), std::fabs(hyp2) / (a * a), std::fabs(glog1), std::fabs(glog2)});
  double pair = hyp_term - log_term;
  if (pair_scale > kCancellationLimit * std::fabs(pair) * mass) pair = conditional_log_mean(a, z1, z2);

  // beta^(a-1) e^(-beta h) [h^a - e^(-beta) (h+1)^a] / Gamma(a)
  //   = [z1^a e^(-z1) - z2^a e^(-z2)] / (beta Gamma(a)).
  const auto density_edge = [&](double z) {
    return z > 0.0 ? std::exp(a * std::log(z) - z - lg) : 0.0;
  };
  const double denom = 0.38 + scn.d_sqrt_lambda();
  const double edge_term = 0.8 * ts * (density_edge(z1) - density_edge(z2)) / (b * mass * denom * denom);

  return k * pair + edge_term - k * special::digamma(a);
}

CrlbResult crlb_gamma_asymptotic(std::span<const int> samples, const Scenario& scn) {
  require_moving(scn, "crlb_gamma_asymptotic");
  if (samples.size() < 1000) throw std::invalid_argument("crlb_gamma_asymptotic: need at least 1000 samples");
  std::map<int, std::size_t> multiplicity;
  for (int h : samples) {
    if (h < 0) throw std::invalid_argument("crlb_gamma_asymptotic: negative count");
    ++multiplicity[h];
  }
  double fisher_sum = 0.0;
  for (const auto& [h, count] : multiplicity) {
    const double score = dlogf_dv_gamma(h, scn);
    fisher_sum += static_cast<double>(count) * score * score;
  }
  if (!(fisher_sum > 0.0)) throw std::runtime_error("crlb_gamma_asymptotic: Fisher information vanishes");
  return {static_cast<double>(samples.size()) / fisher_sum, CrlbMethod::gamma_asymptotic};
}

}  // namespace hocount

#include "hocount/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hocount/special_functions.hpp"

namespace hocount {

double mean_handovers(const Scenario& scn) {
  return 4.0 * scn.d_sqrt_lambda() / std::numbers::pi;
}

GammaApprox gamma_params(double d_sqrt_lambda) {
  if (!(d_sqrt_lambda >= 0.0)) throw std::invalid_argument("gamma_params: d*sqrt(lambda) must be non-negative");
  return {2.7 + 4.0 * d_sqrt_lambda, std::numbers::pi + 0.8 / (0.38 + d_sqrt_lambda)};
}

GaussianApprox gaussian_params(double d_sqrt_lambda) {
  if (!(d_sqrt_lambda >= 0.0)) throw std::invalid_argument("gaussian_params: d*sqrt(lambda) must be non-negative");
  return {4.0 * d_sqrt_lambda / std::numbers::pi, 0.07 + 0.41 * d_sqrt_lambda};
}

double gamma_pmf(int h, const GammaApprox& ga) {
  if (h < 0) throw std::invalid_argument("gamma_pmf: h must be non-negative");
  if (!(ga.alpha > 0.0) || !(ga.beta > 0.0)) throw std::invalid_argument("gamma_pmf: alpha, beta must be positive");
  return special::gamma_interval_mass(ga.alpha, ga.beta * h, ga.beta * (h + 1));
}

double gaussian_pmf(int h, const GaussianApprox& gn) {
  if (h < 0) throw std::invalid_argument("gaussian_pmf: h must be non-negative");
  if (!(gn.sigma2 > 0.0)) throw std::invalid_argument("gaussian_pmf: sigma2 must be positive");
  const double diff = h - gn.mu;
  return std::exp(-diff * diff / (2.0 * gn.sigma2)) / std::sqrt(2.0 * std::numbers::pi * gn.sigma2);
}

HandoverPmf::HandoverPmf(std::vector<double> probs, PmfSource source)
    : probs_(std::move(probs)), source_(source) {
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("HandoverPmf: probabilities must lie in [0, 1]");
  }
}

HandoverPmf HandoverPmf::from_gamma(const GammaApprox& ga, int support) {
  std::vector<double> p(static_cast<std::size_t>(std::max(support, 0)));
  for (int h = 0; h < support; ++h) p[static_cast<std::size_t>(h)] = gamma_pmf(h, ga);
  return {std::move(p), PmfSource::gamma};
}

HandoverPmf HandoverPmf::from_gaussian(const GaussianApprox& gn, int support) {
  std::vector<double> p(static_cast<std::size_t>(std::max(support, 0)));
  for (int h = 0; h < support; ++h) p[static_cast<std::size_t>(h)] = gaussian_pmf(h, gn);
  return {std::move(p), PmfSource::gaussian};
}

int HandoverPmf::max_support() const {
  for (int h = size() - 1; h >= 0; --h) {
    if ((*this)(h) > 0.0) return h;
  }
  return -1;
}

double HandoverPmf::total() const {
  double s = 0.0;
  for (double p : probs_) s += p;
  return s;
}

double HandoverPmf::mean() const {
  double m = 0.0;
  for (int h = 0; h < size(); ++h) m += h * (*this)(h);
  return m / total();
}

double HandoverPmf::variance() const {
  const double m = mean();
  double v = 0.0;
  for (int h = 0; h < size(); ++h) v += (h - m) * (h - m) * (*this)(h);
  return v / total();
}

HandoverPmf empirical_pmf(std::span<const int> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical_pmf: no samples");
  int max_h = 0;
  for (int h : samples) {
    if (h < 0) throw std::invalid_argument("empirical_pmf: negative count");
    max_h = std::max(max_h, h);
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(max_h) + 1, 0);
  for (int h : samples) ++counts[static_cast<std::size_t>(h)];
  std::vector<double> p(counts.size());
  const auto n = static_cast<double>(samples.size());
  for (std::size_t h = 0; h < counts.size(); ++h) p[h] = static_cast<double>(counts[h]) / n;
  return {std::move(p), PmfSource::empirical};
}

double pmf_mse(const HandoverPmf& approx, const HandoverPmf& empirical) {
  const int n_h = empirical.max_support() + 1;
  if (n_h <= 0 || approx.size() == 0) throw std::invalid_argument("pmf_mse: empty PMF");
  double acc = 0.0;
  for (int h = 0; h < n_h; ++h) {
    const double e = approx(h) - empirical(h);
    acc += e * e;
  }
  return acc / n_h;
}

double total_variation(const HandoverPmf& a, const HandoverPmf& b) {
  const int n = std::max(a.size(), b.size());
  double acc = 0.0;
  for (int h = 0; h < n; ++h) acc += std::fabs(a(h) - b(h));
  return 0.5 * acc;
}

}  // namespace hocount

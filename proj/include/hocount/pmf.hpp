#pragma once

#include <span>
#include <vector>

#include "hocount/scenario.hpp"

namespace hocount {

/// Gamma model of the handover count: the mass of gamma(alpha, rate beta)
/// on [h, h + 1).
struct GammaApprox {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Gaussian model of the handover count sampled at the integers (not
/// renormalized).
struct GaussianApprox {
  double mu = 0.0;
  double sigma2 = 1.0;
};

/// E[H] = 4 v T sqrt(lambda) / pi.
double mean_handovers(const Scenario& scn);

/// alpha = 2.7 + 4 x, beta = pi + 0.8 / (0.38 + x), x = d sqrt(lambda).
GammaApprox gamma_params(double d_sqrt_lambda);

/// mu = 4 x / pi, sigma^2 = 0.07 + 0.41 x, x = d sqrt(lambda).
GaussianApprox gaussian_params(double d_sqrt_lambda);

double gamma_pmf(int h, const GammaApprox& ga);
double gaussian_pmf(int h, const GaussianApprox& gn);

enum class PmfSource { empirical, gamma, gaussian };

/// Distribution over handover counts 0, 1, ..., size() - 1; zero beyond.
class HandoverPmf {
 public:
  HandoverPmf() = default;
  HandoverPmf(std::vector<double> probs, PmfSource source);

  static HandoverPmf from_gamma(const GammaApprox& ga, int support);
  static HandoverPmf from_gaussian(const GaussianApprox& gn, int support);

  double operator()(int h) const {
    return h >= 0 && static_cast<std::size_t>(h) < probs_.size() ? probs_[static_cast<std::size_t>(h)] : 0.0;
  }
  const std::vector<double>& probs() const { return probs_; }
  PmfSource source() const { return source_; }
  int size() const { return static_cast<int>(probs_.size()); }
  /// Largest h with non-zero probability; -1 when all mass is zero.
  int max_support() const;
  double total() const;
  double mean() const;
  double variance() const;

 private:
  std::vector<double> probs_;
  PmfSource source_ = PmfSource::empirical;
};

/// Relative frequencies. Throws std::invalid_argument on empty input or
/// negative counts.
HandoverPmf empirical_pmf(std::span<const int> samples);

/// (1 / N_h) sum_{h=0}^{N_h - 1} (approx(h) - empirical(h))^2 with
/// N_h = empirical.max_support() + 1.
double pmf_mse(const HandoverPmf& approx, const HandoverPmf& empirical);

/// Total-variation distance between two PMFs.
double total_variation(const HandoverPmf& a, const HandoverPmf& b);

struct FitOptions {
  int max_evaluations = 20000;
  double step_tolerance = 1e-7;  // relative (log-space) step at which the search stops
};

/// Derivative-free least-squares refit of (alpha, beta) to an empirical PMF,
/// minimizing pmf_mse by coordinate descent on a shrinking grid. The search
/// runs in (log alpha, log alpha/beta) and starts from moment matching, so it
/// does not depend on the fitted parameter laws. Throws std::runtime_error if
/// the evaluation budget runs out.
GammaApprox fit_gamma_params(const HandoverPmf& empirical, const FitOptions& options = {});

/// Same search for sigma^2 with mu fixed to the empirical mean.
double fit_gaussian_sigma2(const HandoverPmf& empirical, const FitOptions& options = {});

}  // namespace hocount

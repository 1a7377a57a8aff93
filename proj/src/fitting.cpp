#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hocount/pmf.hpp"

namespace hocount {

namespace {

template <std::size_t N>
std::array<double, N> coordinate_descent(const std::function<double(const std::array<double, N>&)>& objective,
                                         std::array<double, N> x, const FitOptions& options) {
  double best = objective(x);
  int evaluations = 1;
  double step = 0.25;
  while (step >= options.step_tolerance) {
    bool improved = false;
    for (std::size_t c = 0; c < N; ++c) {
      for (double sign : {1.0, -1.0}) {
        auto trial = x;
        trial[c] += sign * step;
        const double f = objective(trial);
        if (++evaluations > options.max_evaluations) {
          throw std::runtime_error("coordinate_descent: evaluation budget exhausted");
        }
        if (f < best) {
          best = f;
          x = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

struct Moments {
  double mean;
  double variance;
};

Moments moments_of(const HandoverPmf& pmf) {
  if (pmf.max_support() < 0) throw std::invalid_argument("fit: empty PMF");
  return {pmf.mean(), pmf.variance()};
}

}  // namespace

GammaApprox fit_gamma_params(const HandoverPmf& empirical, const FitOptions& options) {
  const Moments m = moments_of(empirical);
  // Counts are the integer part of the continuous variate, so the continuous
  // law has mean + 1/2 and variance + 1/12.
  const double cont_mean = m.mean + 0.5;
  const double alpha0 = std::clamp(cont_mean * cont_mean / (m.variance + 1.0 / 12.0), 1e-3, 1e4);
  const int n_h = empirical.max_support() + 1;

  const auto objective = [&](const std::array<double, 2>& x) {
    const double alpha = std::exp(x[0]);
    const double beta = alpha / std::exp(x[1]);
    double acc = 0.0;
    for (int h = 0; h < n_h; ++h) {
      const double e = gamma_pmf(h, {alpha, beta}) - empirical(h);
      acc += e * e;
    }
    return acc / n_h;
  };
  const auto x = coordinate_descent<2>(objective, {std::log(alpha0), std::log(cont_mean)}, options);
  const double alpha = std::exp(x[0]);
  return {alpha, alpha / std::exp(x[1])};
}

double fit_gaussian_sigma2(const HandoverPmf& empirical, const FitOptions& options) {
  const Moments m = moments_of(empirical);
  const int n_h = empirical.max_support() + 1;
  const auto objective = [&](const std::array<double, 1>& x) {
    const GaussianApprox gn{m.mean, std::exp(x[0])};
    double acc = 0.0;
    for (int h = 0; h < n_h; ++h) {
      const double e = gaussian_pmf(h, gn) - empirical(h);
      acc += e * e;
    }
    return acc / n_h;
  };
  const auto x = coordinate_descent<1>(objective, {std::log(std::max(m.variance, 1e-3))}, options);
  return std::exp(x[0]);
}

}  // namespace hocount

#include "hocount/msd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hocount/estimation.hpp"
#include "hocount/pmf.hpp"

namespace hocount {

const char* to_string(MobilityState state) {
  switch (state) {
    case MobilityState::low: return "S_L";
    case MobilityState::medium: return "S_M";
    case MobilityState::high: return "S_H";
  }
  return "?";
}

std::pair<int, int> handover_thresholds(double v_l, double v_u, double T, double lambda) {
  if (!(v_l > 0.0 && v_l < v_u)) throw std::invalid_argument("handover_thresholds: need 0 < v_l < v_u");
  if (!(T > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("handover_thresholds: T, lambda must be positive");
  const double scale = 4.0 * T * std::sqrt(lambda) / std::numbers::pi;
  // Snap the floor so that h <= h_l holds exactly when mvu_estimate(h) <= v_l.
  const auto snap = [&](double v) {
    auto h = static_cast<int>(std::floor(scale * v));
    const auto v_hat = [&](int k) { return mvu_estimate(k, T, lambda).v_hat; };
    while (v_hat(h + 1) <= v) ++h;
    while (h >= 0 && v_hat(h) > v) --h;
    return h;
  };
  return {snap(v_l), snap(v_u)};
}

MsdConfig MsdConfig::make(double v_l, double v_u, double T, double lambda) {
  const auto [h_l, h_u] = handover_thresholds(v_l, v_u, T, lambda);
  return {v_l, v_u, T, lambda, h_l, h_u};
}

MsdConfig MsdConfig::from_kmh(double v_l_kmh, double v_u_kmh, double T, double lambda) {
  return make(kmh_to_canonical(v_l_kmh), kmh_to_canonical(v_u_kmh), T, lambda);
}

MsdConfig MsdConfig::with_thresholds(int h_l, int h_u) const {
  if (!(h_l >= 0 && h_l <= h_u)) throw std::invalid_argument("MsdConfig: need 0 <= h_l <= h_u");
  MsdConfig cfg = *this;
  cfg.h_l = h_l;
  cfg.h_u = h_u;
  return cfg;
}

MobilityState detect_state(double v_hat, const MsdConfig& cfg) {
  if (!(v_hat >= 0.0)) throw std::invalid_argument("detect_state: v_hat must be non-negative");
  if (v_hat <= cfg.v_l) return MobilityState::low;
  if (v_hat <= cfg.v_u) return MobilityState::medium;
  return MobilityState::high;
}

double StateProbs::of(MobilityState s) const {
  switch (s) {
    case MobilityState::low: return p_low;
    case MobilityState::medium: return p_med;
    case MobilityState::high: return p_high;
  }
  return 0.0;
}

namespace {

int tail_cutoff(const GaussianApprox& gn) {
  return static_cast<int>(std::ceil(gn.mu + 12.0 * std::sqrt(gn.sigma2)));
}

}  // namespace

StateProbs state_probabilities(const Scenario& scn, const MsdConfig& cfg) {
  if (!(scn.v() > 0.0)) throw std::invalid_argument("state_probabilities: v must be positive");
  const GaussianApprox gn = gaussian_params(scn.d_sqrt_lambda());
  StateProbs out;
  const int h_max = tail_cutoff(gn);
  for (int h = 0; h <= h_max; ++h) {
    const double p = gaussian_pmf(h, gn);
    if (h <= cfg.h_l) {
      out.p_low += p;
    } else if (h <= cfg.h_u) {
      out.p_med += p;
    } else {
      out.p_high += p;
    }
  }
  return out;
}

double gaussian_total_mass(const Scenario& scn) {
  const GaussianApprox gn = gaussian_params(scn.d_sqrt_lambda());
  double total = 0.0;
  const int h_max = tail_cutoff(gn);
  for (int h = 0; h <= h_max; ++h) total += gaussian_pmf(h, gn);
  return total;
}

Detection detection_probability(const Scenario& scn, const MsdConfig& cfg) {
  const StateProbs probs = state_probabilities(scn, cfg);
  const MobilityState truth = detect_state(scn.v(), cfg);
  const double p_d = probs.of(truth);
  return {p_d, probs.total() - p_d};
}

double average_detection_probability(int h_l, int h_u, const MsdConfig& base) {
  if (!(h_u > h_l && h_l >= 0)) throw std::invalid_argument("average_detection_probability: need h_u > h_l >= 0");
  const MsdConfig cfg = base.with_thresholds(h_l, h_u);
  double acc = 0.0;
  int n = 0;
  for (int v_kmh = 10; v_kmh <= 120; ++v_kmh, ++n) {
    acc += detection_probability(Scenario::from_kmh(cfg.lambda, v_kmh, cfg.T), cfg).p_d;
  }
  return acc / n;
}

std::vector<ThresholdSweepRow> sweep_thresholds(const MsdConfig& base, int h_max) {
  std::vector<ThresholdSweepRow> rows;
  for (int h_l = 0; h_l < h_max; ++h_l) {
    for (int h_u = h_l + 1; h_u <= h_max; ++h_u) {
      rows.push_back({h_l, h_u, average_detection_probability(h_l, h_u, base)});
    }
  }
  return rows;
}

ThresholdSweepRow best_thresholds(const std::vector<ThresholdSweepRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("best_thresholds: no rows");
  ThresholdSweepRow best = rows.front();
  for (const auto& r : rows) {
    if (r.avg_p_d > best.avg_p_d) best = r;
  }
  return best;
}

}  // namespace hocount

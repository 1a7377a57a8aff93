#pragma once

#include <utility>
#include <vector>

#include "hocount/scenario.hpp"

namespace hocount {

enum class MobilityState { low, medium, high };

const char* to_string(MobilityState state);

/// Velocity thresholds and the matching handover-count thresholds.
struct MsdConfig {
  double v_l = 0.0;  // km/s
  double v_u = 0.0;  // km/s
  double T = 0.0;
  double lambda = 0.0;
  int h_l = 0;
  int h_u = 0;

  /// Thresholds from handover_thresholds.
  static MsdConfig make(double v_l, double v_u, double T, double lambda);
  static MsdConfig from_kmh(double v_l_kmh, double v_u_kmh, double T, double lambda);

  /// Copy with explicit count thresholds (h_l < h_u).
  MsdConfig with_thresholds(int h_l, int h_u) const;
};

/// h = floor(4 T sqrt(lambda) v / pi) for v = v_l, v_u.
std::pair<int, int> handover_thresholds(double v_l, double v_u, double T, double lambda);

/// S_L if v_hat <= v_l, S_M if v_l < v_hat <= v_u, S_H otherwise.
MobilityState detect_state(double v_hat, const MsdConfig& cfg);

/// Gaussian-model state probabilities. They sum to the model's total mass over
/// h = 0..H*, H* = ceil(mu + 12 sigma), which need not be exactly 1.
struct StateProbs {
  double p_low = 0.0;
  double p_med = 0.0;
  double p_high = 0.0;

  double total() const { return p_low + p_med + p_high; }
  double of(MobilityState s) const;
};

StateProbs state_probabilities(const Scenario& scn, const MsdConfig& cfg);

/// Mass of the Gaussian model over h = 0..ceil(mu + 12 sigma).
double gaussian_total_mass(const Scenario& scn);

struct Detection {
  double p_d = 0.0;
  double p_fa = 0.0;
};

/// P_D is the probability of the state containing the true v; P_FA is the
/// remaining mass.
Detection detection_probability(const Scenario& scn, const MsdConfig& cfg);

/// Mean P_D over v = 10, 11, ..., 120 km/h with (h_l, h_u) overriding the
/// configured thresholds.
double average_detection_probability(int h_l, int h_u, const MsdConfig& base);

struct ThresholdSweepRow {
  int h_l = 0;
  int h_u = 0;
  double avg_p_d = 0.0;
};

/// Every 0 <= h_l < h_u <= h_max, in lexicographic order.
std::vector<ThresholdSweepRow> sweep_thresholds(const MsdConfig& base, int h_max = 15);

/// First row with the largest average P_D.
ThresholdSweepRow best_thresholds(const std::vector<ThresholdSweepRow>& rows);

}  // namespace hocount

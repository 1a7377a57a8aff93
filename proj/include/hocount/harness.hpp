#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "hocount/mobility.hpp"
#include "hocount/msd.hpp"
#include "hocount/pmf.hpp"
#include "hocount/point_process.hpp"
#include "hocount/scenario.hpp"

namespace hocount {

struct PppDeployment {};

/// Cluster deployment; grid scenarios must carry lambda = lambda0 lambda1 pi R^2.
struct ClusterDeployment {
  ClusterParams params;
};

/// Hardcore deployment with lambda_hc taken from each grid scenario.
struct HcpDeployment {
  double rho = 0.0;
};

using Deployment = std::variant<PppDeployment, ClusterDeployment, HcpDeployment>;

struct LinearMobility {};

/// RWP at the scenario speed over the scenario window T.
struct RwpMobility {
  double xi = 1.0;
};

/// Variable-speed straight trip; the scenario v and T are ignored, truth is the
/// trip's mean speed and the window is the profile duration.
struct ProfileMobility {
  SpeedProfile profile;
};

using Mobility = std::variant<LinearMobility, RwpMobility, ProfileMobility>;

struct ExperimentPlan {
  std::vector<Scenario> grid;
  Deployment deployment = PppDeployment{};
  Mobility mobility = LinearMobility{};
  std::size_t trials = 100000;
  std::uint64_t master_seed = 1;
  unsigned threads = 1;

  /// Throws std::invalid_argument if any grid point is unusable.
  void validate() const;
};

/// One simulated measurement window.
struct TrialOutcome {
  int h = 0;
  double v_true = 0.0;  // km/s
  double v_hat = 0.0;   // km/s
};

/// Runs `plan.trials` independent trials for grid point `grid_index`. Trial i
/// draws from a generator seeded by derive_seed(master_seed, grid_index, i),
/// so the output is independent of `plan.threads`.
std::vector<TrialOutcome> simulate_trials(const ExperimentPlan& plan, std::size_t grid_index);

/// Handover counts only.
std::vector<int> simulate_counts(const ExperimentPlan& plan, std::size_t grid_index);

/// Empirical PMF per grid point (linear mobility, PPP deployment).
std::vector<HandoverPmf> run_pmf_experiment(const ExperimentPlan& plan);

struct MetricsRecord {
  Scenario scenario;
  double rmse_kmh = 0.0;
  double bias_kmh = 0.0;
  double mean_h = 0.0;
  HandoverPmf pmf;
  std::optional<double> p_d;
};

/// RMSE of the MVU estimate against each trial's true speed, per grid point.
std::vector<MetricsRecord> run_rmse_experiment(const ExperimentPlan& plan);

/// Empirical frequencies of detected states per grid point (linear, PPP).
/// `cfg` supplies v_l, v_u; T and lambda come from each grid point.
std::vector<StateProbs> run_msd_experiment(const ExperimentPlan& plan, const MsdConfig& cfg);

struct TripWindow {
  int index = 0;
  double t_start = 0.0;
  double true_mean_speed = 0.0;  // km/s
  int h = 0;
  double v_hat = 0.0;            // km/s
  MobilityState state = MobilityState::low;
};

/// Counts handovers along one continuous trip through a single PPP realization
/// and estimates speed and state in consecutive windows of length `window_T`.
/// A trailing partial window is dropped.
std::vector<TripWindow> run_trip_demo(const SpeedProfile& profile, double window_T, double lambda,
                                      std::uint64_t seed, double v_l = 40.0 / 3600.0,
                                      double v_u = 80.0 / 3600.0);

}  // namespace hocount

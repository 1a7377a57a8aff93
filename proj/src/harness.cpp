#include "hocount/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "hocount/estimation.hpp"
#include "hocount/rng.hpp"
#include "hocount/traversal.hpp"

namespace hocount {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_linear_ppp(const ExperimentPlan& plan) {
  return std::holds_alternative<PppDeployment>(plan.deployment) &&
         std::holds_alternative<LinearMobility>(plan.mobility);
}

struct DrawnTrip {
  Trajectory traj;
  double v_true;
  double T;
};

DrawnTrip draw_trajectory(const Mobility& mobility, const Scenario& scn, Rng& rng) {
  const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return std::visit(
      overloaded{
          [&](const LinearMobility&) {
            return DrawnTrip{linear_trajectory(scn.v(), scn.T(), Point::Zero(), angle), scn.v(), scn.T()};
          },
          [&](const RwpMobility& m) {
            return DrawnTrip{sample_rwp({m.xi, scn.v(), 0.0}, scn.T(), Point::Zero(), rng), scn.v(), scn.T()};
          },
          [&](const ProfileMobility& m) {
            Trajectory traj = profile_trajectory(m.profile, Point::Zero(), angle);
            const double T = traj.duration();
            const double v = traj.length() / T;
            return DrawnTrip{std::move(traj), v, T};
          },
      },
      mobility);
}

PointPattern draw_pattern(const Deployment& deployment, const Scenario& scn, const Trajectory& traj,
                          Rng& rng) {
  return std::visit(
      overloaded{
          [&](const PppDeployment&) { return sample_ppp(scn.lambda(), safe_window_for(traj, scn.lambda()), rng); },
          [&](const ClusterDeployment& d) {
            // Clusters leave voids well beyond 4/sqrt(lambda); a margin of two
            // disc radii keeps the edge certificate satisfied.
            const Window w = safe_window_for(traj, scn.lambda()).dilated(2.0 * d.params.R);
            return sample_matern_cluster(d.params, w, rng);
          },
          [&](const HcpDeployment& d) {
            return sample_matern_hcp2({scn.lambda(), d.rho}, safe_window_for(traj, scn.lambda()), rng);
          },
      },
      deployment);
}

TrialOutcome run_trial(const ExperimentPlan& plan, const Scenario& scn, Rng& rng) {
  DrawnTrip trip = draw_trajectory(plan.mobility, scn, rng);
  const PointPattern pattern = draw_pattern(plan.deployment, scn, trip.traj, rng);
  if (pattern.empty()) return {0, trip.v_true, 0.0};
  const HandoverCount count = count_handovers(pattern, trip.traj);
  if (!edge_certificate(pattern, trip.traj, count)) {
    throw std::runtime_error("simulation: a site outside the window could serve the trajectory");
  }
  const int h = static_cast<int>(count.h);
  return {h, trip.v_true, mvu_estimate(h, trip.T, scn.lambda()).v_hat};
}

}  // namespace

void ExperimentPlan::validate() const {
  if (grid.empty()) throw std::invalid_argument("ExperimentPlan: empty grid");
  if (trials < 1) throw std::invalid_argument("ExperimentPlan: trials must be >= 1");
  for (const Scenario& scn : grid) {
    if (std::holds_alternative<RwpMobility>(mobility)) {
      RwpParams{std::get<RwpMobility>(mobility).xi, scn.v(), 0.0}.validate();
    }
    if (const auto* m = std::get_if<ProfileMobility>(&mobility)) {
      if (m->profile.empty()) throw std::invalid_argument("ExperimentPlan: empty speed profile");
    }
    if (const auto* d = std::get_if<ClusterDeployment>(&deployment)) {
      d->params.validate();
      const double eq = d->params.equivalent_intensity();
      if (std::fabs(scn.lambda() - eq) > 1e-9 * eq) {
        throw std::invalid_argument("ExperimentPlan: cluster grid lambda must equal lambda0 lambda1 pi R^2");
      }
    }
    if (const auto* d = std::get_if<HcpDeployment>(&deployment)) {
      HcpParams{scn.lambda(), d->rho}.validate();
    }
  }
}

std::vector<TrialOutcome> simulate_trials(const ExperimentPlan& plan, std::size_t grid_index) {
  plan.validate();
  if (grid_index >= plan.grid.size()) throw std::out_of_range("simulate_trials: grid index");
  const Scenario& scn = plan.grid[grid_index];
  std::vector<TrialOutcome> out(plan.trials);

  const unsigned workers = std::max(1u, std::min<unsigned>(plan.threads, static_cast<unsigned>(plan.trials)));
  std::vector<std::exception_ptr> errors(workers);
  const auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < plan.trials; i += workers) {
        Rng rng(derive_seed(plan.master_seed, grid_index, i));
        out[i] = run_trial(plan, scn, rng);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<int> simulate_counts(const ExperimentPlan& plan, std::size_t grid_index) {
  const auto trials = simulate_trials(plan, grid_index);
  std::vector<int> counts(trials.size());
  std::transform(trials.begin(), trials.end(), counts.begin(), [](const TrialOutcome& t) { return t.h; });
  return counts;
}

std::vector<HandoverPmf> run_pmf_experiment(const ExperimentPlan& plan) {
  if (!is_linear_ppp(plan)) throw std::invalid_argument("run_pmf_experiment: needs linear mobility and PPP deployment");
  std::vector<HandoverPmf> out;
  for (std::size_t g = 0; g < plan.grid.size(); ++g) out.push_back(empirical_pmf(simulate_counts(plan, g)));
  return out;
}

std::vector<MetricsRecord> run_rmse_experiment(const ExperimentPlan& plan) {
  std::vector<MetricsRecord> out;
  for (std::size_t g = 0; g < plan.grid.size(); ++g) {
    const auto trials = simulate_trials(plan, g);
    double sq = 0.0;
    double err = 0.0;
    double sum_h = 0.0;
    std::vector<int> counts;
    counts.reserve(trials.size());
    for (const TrialOutcome& t : trials) {
      const double e = t.v_hat - t.v_true;
      sq += e * e;
      err += e;
      sum_h += t.h;
      counts.push_back(t.h);
    }
    const auto n = static_cast<double>(trials.size());
    out.push_back({plan.grid[g], canonical_to_kmh(std::sqrt(sq / n)), canonical_to_kmh(err / n), sum_h / n,
                   empirical_pmf(counts), std::nullopt});
  }
  return out;
}

std::vector<StateProbs> run_msd_experiment(const ExperimentPlan& plan, const MsdConfig& cfg) {
  if (!is_linear_ppp(plan)) throw std::invalid_argument("run_msd_experiment: needs linear mobility and PPP deployment");
  std::vector<StateProbs> out;
  for (std::size_t g = 0; g < plan.grid.size(); ++g) {
    const Scenario& scn = plan.grid[g];
    const MsdConfig local = MsdConfig::make(cfg.v_l, cfg.v_u, scn.T(), scn.lambda());
    std::size_t counts[3] = {0, 0, 0};
    for (const TrialOutcome& t : simulate_trials(plan, g)) {
      ++counts[static_cast<int>(detect_state(t.v_hat, local))];
    }
    const auto n = static_cast<double>(plan.trials);
    out.push_back({counts[0] / n, counts[1] / n, counts[2] / n});
  }
  return out;
}

std::vector<TripWindow> run_trip_demo(const SpeedProfile& profile, double window_T, double lambda,
                                      std::uint64_t seed, double v_l, double v_u) {
  if (!(window_T > 0.0)) throw std::invalid_argument("run_trip_demo: window length must be positive");
  const double total = profile_duration(profile);
  if (total < window_T) throw std::invalid_argument("run_trip_demo: profile shorter than one window");
  const MsdConfig cfg = MsdConfig::make(v_l, v_u, window_T, lambda);

  Rng rng(seed);
  const Trajectory traj = profile_trajectory(profile, Point::Zero(), rng.uniform(0.0, 2.0 * std::numbers::pi));
  const PointPattern pattern = sample_ppp(lambda, safe_window_for(traj, lambda), rng);
  const HandoverCount count = count_handovers(pattern, traj, true);
  if (!edge_certificate(pattern, traj, count)) {
    throw std::runtime_error("run_trip_demo: a site outside the window could serve the trajectory");
  }

  const auto n_windows = static_cast<int>(std::floor(total / window_T + 1e-9));
  std::vector<TripWindow> out(static_cast<std::size_t>(n_windows));
  for (int k = 0; k < n_windows; ++k) {
    out[k].index = k;
    out[k].t_start = k * window_T;
    out[k].true_mean_speed = traj.length_between(k * window_T, (k + 1) * window_T) / window_T;
  }
  for (const Crossing& c : *count.crossings) {
    const auto k = static_cast<int>(std::floor(c.t / window_T));
    if (k >= 0 && k < n_windows) ++out[k].h;
  }
  for (TripWindow& w : out) {
    w.v_hat = mvu_estimate(w.h, window_T, lambda).v_hat;
    w.state = detect_state(w.v_hat, cfg);
  }
  return out;
}

}  // namespace hocount

#include "hocount/cli.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "hocount/estimation.hpp"
#include "hocount/harness.hpp"
#include "hocount/msd.hpp"
#include "hocount/pmf.hpp"
#include "hocount/table_io.hpp"

namespace hocount {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

struct Common {
  std::uint64_t seed = 1;
  std::size_t trials = 100000;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;

  unsigned workers() const {
    return threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  }
};

struct Grid {
  std::vector<double> lambda;
  std::vector<double> v_kmh;
  std::vector<double> T{12.0};

  std::vector<Scenario> scenarios() const {
    std::vector<Scenario> out;
    for (double l : lambda)
      for (double v : v_kmh)
        for (double t : T) out.push_back(Scenario::from_kmh(l, v, t));
    return out;
  }
};

/// Canonical argument list, built from parsed values so that equivalent
/// invocations produce identical manifests.
class CommandLine {
 public:
  explicit CommandLine(std::string sub) { args_.push_back(std::move(sub)); }

  CommandLine& add(const std::string& flag, const std::string& value) {
    args_.push_back(flag);
    args_.push_back(value);
    params_.emplace_back(flag.substr(2), value);
    return *this;
  }
  CommandLine& add(const std::string& flag, double value) { return add(flag, format_number(value)); }
  CommandLine& add_int(const std::string& flag, long long value) { return add(flag, std::to_string(value)); }
  CommandLine& add(const std::string& flag, const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_number(values[i]);
    return add(flag, s);
  }
  CommandLine& flag(const std::string& name) {
    args_.push_back(name);
    params_.emplace_back(name.substr(2), "true");
    return *this;
  }

  Manifest manifest(std::optional<std::uint64_t> seed) const { return {args_, params_, seed, kVersion}; }

 private:
  std::vector<std::string> args_;
  std::vector<std::pair<std::string, std::string>> params_;
};

/// A validated command ready to run.
struct Job {
  Manifest manifest;
  std::function<Table()> run;
  bool harness = false;
};

void add_common(CLI::App* sub, Common& c, bool seeded) {
  sub->add_option("--out,-o", c.out, "Output file (default: stdout)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  if (seeded) {
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--trials", c.trials, "Monte Carlo trials per grid point");
    sub->add_option("--threads", c.threads, "Worker threads (0: all cores)");
  }
}

void add_grid(CLI::App* sub, Grid& g, bool lambda_required = true) {
  auto* l = sub->add_option("--lambda", g.lambda, "SBS intensity [km^-2]")->delimiter(',');
  if (lambda_required) l->required();
  sub->add_option("--v-kmh", g.v_kmh, "UE speed [km/h]")->delimiter(',')->required();
  sub->add_option("--T", g.T, "Measurement window [s]")->delimiter(',')->capture_default_str();
}

void add_grid_args(CommandLine& cl, const Grid& g) {
  cl.add("--lambda", g.lambda).add("--v-kmh", g.v_kmh).add("--T", g.T);
}

void check_grid(const Grid& g) {
  require(!g.lambda.empty() && !g.v_kmh.empty() && !g.T.empty(), "empty scenario grid");
  for (double l : g.lambda) require(l > 0 && std::isfinite(l), "--lambda must be positive");
  for (double v : g.v_kmh) require(v >= 0 && std::isfinite(v), "--v-kmh must be non-negative");
  for (double t : g.T) require(t > 0 && std::isfinite(t), "--T must be positive");
}

void check_seeded(const Common& c) { require(c.trials >= 1, "--trials must be >= 1"); }

// ---- pmf -------------------------------------------------------------------

struct PmfArgs {
  Grid grid;
};

Job prepare_pmf(const PmfArgs& a, const Common& c) {
  check_grid(a.grid);
  check_seeded(c);
  CommandLine cl("pmf");
  add_grid_args(cl, a.grid);
  cl.add_int("--trials", static_cast<long long>(c.trials)).add_int("--seed", static_cast<long long>(c.seed));
  cl.add("--format", c.format);

  ExperimentPlan plan;
  plan.grid = a.grid.scenarios();
  plan.trials = c.trials;
  plan.master_seed = c.seed;
  plan.threads = c.workers();
  plan.validate();

  return {cl.manifest(c.seed), [plan] {
            Table t{{"lambda", "v_kmh", "T", "h", "empirical", "gamma", "gaussian"}, {}, {}};
            const auto pmfs = run_pmf_experiment(plan);
            for (std::size_t g = 0; g < plan.grid.size(); ++g) {
              const Scenario& scn = plan.grid[g];
              const HandoverPmf& emp = pmfs[g];
              const GammaApprox ga = gamma_params(scn.d_sqrt_lambda());
              const GaussianApprox gn = gaussian_params(scn.d_sqrt_lambda());
              const int tail = static_cast<int>(std::ceil(gn.mu + 12.0 * std::sqrt(gn.sigma2)));
              const int support = std::max(emp.max_support(), tail) + 1;
              const HandoverPmf gam = HandoverPmf::from_gamma(ga, support);
              const HandoverPmf gau = HandoverPmf::from_gaussian(gn, support);
              for (int h = 0; h < support; ++h) {
                t.add_row({scn.lambda(), scn.v_kmh(), scn.T(), static_cast<long long>(h), emp(h), gam(h), gau(h)});
              }
              const std::string key = "g" + std::to_string(g) + ".";
              t.summary.emplace_back(key + "mean_empirical", emp.mean());
              t.summary.emplace_back(key + "mean_analytic", mean_handovers(scn));
              t.summary.emplace_back(key + "mse_gamma", pmf_mse(gam, emp));
              t.summary.emplace_back(key + "mse_gaussian", pmf_mse(gau, emp));
            }
            return t;
          },
          true};
}

// ---- crlb ------------------------------------------------------------------

struct CrlbArgs {
  Grid grid;
  bool gamma = false;
};

Job prepare_crlb(const CrlbArgs& a, const Common& c) {
  check_grid(a.grid);
  for (double v : a.grid.v_kmh) require(v > 0, "--v-kmh must be positive for CRLB");
  CommandLine cl("crlb");
  add_grid_args(cl, a.grid);
  std::optional<std::uint64_t> seed;
  ExperimentPlan plan;
  plan.grid = a.grid.scenarios();
  if (a.gamma) {
    check_seeded(c);
    require(c.trials >= 1000, "--gamma needs --trials >= 1000");
    cl.flag("--gamma").add_int("--trials", static_cast<long long>(c.trials)).add_int("--seed", static_cast<long long>(c.seed));
    seed = c.seed;
    plan.trials = c.trials;
    plan.master_seed = c.seed;
    plan.threads = c.workers();
    plan.validate();
  }
  cl.add("--format", c.format);

  const bool gamma = a.gamma;
  return {cl.manifest(seed), [plan, gamma] {
            Table t{{"lambda", "v_kmh", "T", "crlb_std_kmh", "mvu_std_kmh", "method"}, {}, {}};
            for (std::size_t g = 0; g < plan.grid.size(); ++g) {
              const Scenario& scn = plan.grid[g];
              const double mvu = canonical_to_kmh(std::sqrt(mvu_variance(scn)));
              const CrlbResult gauss = crlb_gaussian(scn);
              t.add_row({scn.lambda(), scn.v_kmh(), scn.T(), gauss.std_kmh(), mvu, std::string(to_string(gauss.method))});
              if (gamma) {
                const CrlbResult gam = crlb_gamma_asymptotic(simulate_counts(plan, g), scn);
                t.add_row({scn.lambda(), scn.v_kmh(), scn.T(), gam.std_kmh(), mvu, std::string(to_string(gam.method))});
              }
            }
            return t;
          },
          gamma};
}

// ---- estimate --------------------------------------------------------------

struct EstimateArgs {
  int h = -1;
  double T = 12.0;
  double lambda = 0.0;
  double vl_kmh = 40.0;
  double vu_kmh = 80.0;
};

Job prepare_estimate(const EstimateArgs& a, const Common& c) {
  require(a.h >= 0, "--h must be non-negative");
  require(a.T > 0 && std::isfinite(a.T), "--T must be positive");
  require(a.lambda > 0 && std::isfinite(a.lambda), "--lambda must be positive");
  require(a.vl_kmh > 0 && a.vl_kmh < a.vu_kmh, "need 0 < --vl-kmh < --vu-kmh");
  CommandLine cl("estimate");
  cl.add_int("--h", a.h).add("--T", a.T).add("--lambda", a.lambda).add("--vl-kmh", a.vl_kmh).add("--vu-kmh", a.vu_kmh);
  cl.add("--format", c.format);
  return {cl.manifest(std::nullopt), [a] {
            const VelocityEstimate est = mvu_estimate(a.h, a.T, a.lambda);
            const MsdConfig cfg = MsdConfig::from_kmh(a.vl_kmh, a.vu_kmh, a.T, a.lambda);
            const MobilityState state = detect_state(est.v_hat, cfg);
            // The bound is undefined at v_hat = 0.
            const Cell crlb = est.v_hat > 0.0 ? Cell{crlb_gaussian(Scenario(a.lambda, est.v_hat, a.T)).std_kmh()}
                                              : Cell{std::string()};
            Table t{{"h", "T", "lambda", "v_hat_kmh", "state", "crlb_std_kmh"}, {}, {}};
            t.add_row({static_cast<long long>(a.h), a.T, a.lambda, est.v_hat_kmh(), std::string(to_string(state)), crlb});
            return t;
          },
          false};
}

// ---- msd -------------------------------------------------------------------

struct MsdArgs {
  double lambda = 0.0;
  double T = 12.0;
  double vl_kmh = 40.0;
  double vu_kmh = 80.0;
  double v_min = 10.0;
  double v_max = 120.0;
  double v_step = 1.0;
  std::size_t mc_trials = 0;
};

Job prepare_msd(const MsdArgs& a, const Common& c) {
  require(a.lambda > 0 && std::isfinite(a.lambda), "--lambda must be positive");
  require(a.T > 0 && std::isfinite(a.T), "--T must be positive");
  require(a.vl_kmh > 0 && a.vl_kmh < a.vu_kmh, "need 0 < --vl-kmh < --vu-kmh");
  require(a.v_min > 0 && a.v_max >= a.v_min && a.v_step > 0, "need 0 < --v-min <= --v-max and --v-step > 0");
  CommandLine cl("msd");
  cl.add("--lambda", a.lambda).add("--T", a.T).add("--vl-kmh", a.vl_kmh).add("--vu-kmh", a.vu_kmh);
  cl.add("--v-min", a.v_min).add("--v-max", a.v_max).add("--v-step", a.v_step);
  std::optional<std::uint64_t> seed;
  if (a.mc_trials > 0) {
    cl.add_int("--trials", static_cast<long long>(a.mc_trials)).add_int("--seed", static_cast<long long>(c.seed));
    seed = c.seed;
  }
  cl.add("--format", c.format);

  std::vector<double> speeds;
  const auto n = static_cast<int>(std::floor((a.v_max - a.v_min) / a.v_step + 1e-9));
  for (int i = 0; i <= n; ++i) speeds.push_back(a.v_min + i * a.v_step);
  const MsdConfig cfg = MsdConfig::from_kmh(a.vl_kmh, a.vu_kmh, a.T, a.lambda);

  ExperimentPlan plan;
  for (double v : speeds) plan.grid.push_back(Scenario::from_kmh(a.lambda, v, a.T));
  plan.trials = std::max<std::size_t>(a.mc_trials, 1);
  plan.master_seed = c.seed;
  plan.threads = c.workers();
  plan.validate();

  const bool mc = a.mc_trials > 0;
  return {cl.manifest(seed), [plan, cfg, mc] {
            std::vector<std::string> cols{"v_kmh", "p_low", "p_med", "p_high", "p_d", "p_fa"};
            if (mc) cols.insert(cols.end(), {"mc_low", "mc_med", "mc_high"});
            Table t{cols, {}, {}};
            const std::vector<StateProbs> freq = mc ? run_msd_experiment(plan, cfg) : std::vector<StateProbs>{};
            for (std::size_t g = 0; g < plan.grid.size(); ++g) {
              const Scenario& scn = plan.grid[g];
              const StateProbs p = state_probabilities(scn, cfg);
              const Detection d = detection_probability(scn, cfg);
              std::vector<Cell> row{scn.v_kmh(), p.p_low, p.p_med, p.p_high, d.p_d, d.p_fa};
              if (mc) row.insert(row.end(), {freq[g].p_low, freq[g].p_med, freq[g].p_high});
              t.add_row(std::move(row));
            }
            t.summary = {{"h_l", static_cast<long long>(cfg.h_l)}, {"h_u", static_cast<long long>(cfg.h_u)}};
            return t;
          },
          mc};
}

// ---- sweep-thresholds ------------------------------------------------------

struct SweepArgs {
  double lambda = 0.0;
  double T = 12.0;
  double vl_kmh = 40.0;
  double vu_kmh = 80.0;
  int h_max = 15;
};

Job prepare_sweep(const SweepArgs& a, const Common& c) {
  require(a.lambda > 0 && std::isfinite(a.lambda), "--lambda must be positive");
  require(a.T > 0 && std::isfinite(a.T), "--T must be positive");
  require(a.vl_kmh > 0 && a.vl_kmh < a.vu_kmh, "need 0 < --vl-kmh < --vu-kmh");
  require(a.h_max >= 1, "--h-max must be >= 1");
  CommandLine cl("sweep-thresholds");
  cl.add("--lambda", a.lambda).add("--T", a.T).add("--vl-kmh", a.vl_kmh).add("--vu-kmh", a.vu_kmh);
  cl.add_int("--h-max", a.h_max).add("--format", c.format);
  const MsdConfig cfg = MsdConfig::from_kmh(a.vl_kmh, a.vu_kmh, a.T, a.lambda);
  return {cl.manifest(std::nullopt), [cfg, h_max = a.h_max] {
            Table t{{"h_l", "h_u", "avg_p_d"}, {}, {}};
            const auto rows = sweep_thresholds(cfg, h_max);
            for (const auto& r : rows) t.add_row({static_cast<long long>(r.h_l), static_cast<long long>(r.h_u), r.avg_p_d});
            const ThresholdSweepRow best = best_thresholds(rows);
            t.summary = {{"best_h_l", static_cast<long long>(best.h_l)},
                         {"best_h_u", static_cast<long long>(best.h_u)},
                         {"best_avg_p_d", best.avg_p_d},
                         {"analytic_h_l", static_cast<long long>(cfg.h_l)},
                         {"analytic_h_u", static_cast<long long>(cfg.h_u)}};
            return t;
          },
          false};
}

// ---- rmse ------------------------------------------------------------------

struct RmseArgs {
  Grid grid;
  std::string deployment = "ppp";
  std::string mobility = "linear";
  double lambda0 = 50.0;
  double lambda1 = 500.0;
  double R = 0.2;
  double rho = 0.0;
  double xi = 1.0;
};

Job prepare_rmse(RmseArgs a, const Common& c) {
  ExperimentPlan plan;
  CommandLine cl("rmse");
  if (a.deployment == "cluster") {
    const ClusterParams cp{a.lambda0, a.lambda1, a.R};
    try {
      cp.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    require(a.grid.lambda.empty(), "--lambda is derived from --lambda0, --lambda1, --R for cluster deployments");
    a.grid.lambda = {cp.equivalent_intensity()};
    plan.deployment = ClusterDeployment{cp};
    cl.add("--deployment", a.deployment).add("--lambda0", a.lambda0).add("--lambda1", a.lambda1).add("--R", a.R);
    cl.add("--v-kmh", a.grid.v_kmh).add("--T", a.grid.T);
  } else {
    require(!a.grid.lambda.empty(), "--lambda is required");
    cl.add("--deployment", a.deployment);
    if (a.deployment == "hcp") {
      plan.deployment = HcpDeployment{a.rho};
      cl.add("--rho", a.rho);
    }
    add_grid_args(cl, a.grid);
  }
  check_grid(a.grid);
  check_seeded(c);
  cl.add("--mobility", a.mobility);
  if (a.mobility == "rwp") {
    plan.mobility = RwpMobility{a.xi};
    cl.add("--xi", a.xi);
  }
  cl.add_int("--trials", static_cast<long long>(c.trials)).add_int("--seed", static_cast<long long>(c.seed));
  cl.add("--format", c.format);

  plan.grid = a.grid.scenarios();
  plan.trials = c.trials;
  plan.master_seed = c.seed;
  plan.threads = c.workers();
  try {
    plan.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  return {cl.manifest(c.seed), [plan] {
            Table t{{"lambda", "v_kmh", "T", "rmse_kmh", "bias_kmh", "mean_h", "mvu_std_kmh"}, {}, {}};
            for (const MetricsRecord& r : run_rmse_experiment(plan)) {
              const Scenario& scn = r.scenario;
              t.add_row({scn.lambda(), scn.v_kmh(), scn.T(), r.rmse_kmh, r.bias_kmh, r.mean_h,
                         canonical_to_kmh(std::sqrt(mvu_variance(scn)))});
            }
            return t;
          },
          true};
}

// ---- trip ------------------------------------------------------------------

struct TripArgs {
  double lambda = 0.0;
  double window = 12.0;
  std::string profile = "train";
  double cruise_kmh = 100.0;
  double ramp_s = 60.0;
  double cruise_s = 60.0;
  double from_kmh = 0.0;
  double to_kmh = 100.0;
  double duration_s = 180.0;
  double speed_kmh = 60.0;
  double vl_kmh = 40.0;
  double vu_kmh = 80.0;
};

Job prepare_trip(const TripArgs& a, const Common& c) {
  require(a.lambda > 0 && std::isfinite(a.lambda), "--lambda must be positive");
  require(a.window > 0 && std::isfinite(a.window), "--window must be positive");
  require(a.vl_kmh > 0 && a.vl_kmh < a.vu_kmh, "need 0 < --vl-kmh < --vu-kmh");
  CommandLine cl("trip");
  cl.add("--lambda", a.lambda).add("--window", a.window).add("--profile", a.profile);
  SpeedProfile profile;
  if (a.profile == "train") {
    require(a.cruise_kmh >= 0 && a.ramp_s >= 1 && a.cruise_s >= 0, "invalid train profile");
    profile = train_profile(a.cruise_kmh, a.ramp_s, a.cruise_s);
    cl.add("--cruise-kmh", a.cruise_kmh).add("--ramp-s", a.ramp_s).add("--cruise-s", a.cruise_s);
  } else if (a.profile == "ramp") {
    require(a.from_kmh >= 0 && a.to_kmh >= 0 && a.duration_s >= 1, "invalid ramp profile");
    profile = ramp_profile(a.from_kmh, a.to_kmh, a.duration_s);
    cl.add("--from-kmh", a.from_kmh).add("--to-kmh", a.to_kmh).add("--duration-s", a.duration_s);
  } else {
    require(a.speed_kmh >= 0 && a.duration_s > 0, "invalid constant profile");
    profile = {{a.duration_s, kmh_to_canonical(a.speed_kmh)}};
    cl.add("--speed-kmh", a.speed_kmh).add("--duration-s", a.duration_s);
  }
  require(profile_duration(profile) >= a.window, "trip is shorter than one window");
  cl.add("--vl-kmh", a.vl_kmh).add("--vu-kmh", a.vu_kmh);
  cl.add_int("--seed", static_cast<long long>(c.seed)).add("--format", c.format);

  return {cl.manifest(c.seed), [a, profile, seed = c.seed] {
            Table t{{"window", "t_start", "true_kmh", "h", "v_hat_kmh", "state"}, {}, {}};
            const auto rows = run_trip_demo(profile, a.window, a.lambda, seed, kmh_to_canonical(a.vl_kmh),
                                            kmh_to_canonical(a.vu_kmh));
            for (const TripWindow& w : rows) {
              t.add_row({static_cast<long long>(w.index), w.t_start, canonical_to_kmh(w.true_mean_speed),
                         static_cast<long long>(w.h), canonical_to_kmh(w.v_hat), std::string(to_string(w.state))});
            }
            return t;
          },
          true};
}

int execute(const Job& job, const Common& c, std::ostream& out) {
  const Format format = *parse_format(c.format);
  const std::string body = render(job.run(), job.manifest, format);
  if (c.out.empty()) {
    out << body;
    return kExitOk;
  }
  write_file_atomic(c.out, body);
  if (job.harness) write_file_atomic(c.out + ".manifest.json", render_manifest(job.manifest));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Handover-count velocity estimation and mobility-state detection", "hocount"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");
  app.set_version_flag("--version", kVersion);

  Common common;
  PmfArgs pmf;
  CrlbArgs crlb;
  EstimateArgs est;
  MsdArgs msd;
  SweepArgs sweep;
  RmseArgs rmse;
  TripArgs trip;
  std::string replay_file;

  auto* s_pmf = app.add_subcommand("pmf", "Empirical and analytic handover-count PMFs");
  add_grid(s_pmf, pmf.grid);
  add_common(s_pmf, common, true);

  auto* s_crlb = app.add_subcommand("crlb", "Cramer-Rao bounds on the speed estimate");
  add_grid(s_crlb, crlb.grid);
  s_crlb->add_flag("--gamma", crlb.gamma, "Add the gamma-model asymptotic bound (Monte Carlo)");
  add_common(s_crlb, common, true);

  auto* s_est = app.add_subcommand("estimate", "Speed and mobility state from a handover count");
  s_est->set_help_flag("--help", "Print this help message and exit");
  s_est->add_option("--h", est.h, "Handover count")->required();
  s_est->add_option("--T", est.T, "Measurement window [s]")->capture_default_str();
  s_est->add_option("--lambda", est.lambda, "SBS intensity [km^-2]")->required();
  s_est->add_option("--vl-kmh", est.vl_kmh)->capture_default_str();
  s_est->add_option("--vu-kmh", est.vu_kmh)->capture_default_str();
  add_common(s_est, common, false);

  auto* s_msd = app.add_subcommand("msd", "Mobility-state probabilities versus speed");
  s_msd->add_option("--lambda", msd.lambda, "SBS intensity [km^-2]")->required();
  s_msd->add_option("--T", msd.T)->capture_default_str();
  s_msd->add_option("--vl-kmh", msd.vl_kmh)->capture_default_str();
  s_msd->add_option("--vu-kmh", msd.vu_kmh)->capture_default_str();
  s_msd->add_option("--v-min", msd.v_min, "Lowest speed [km/h]")->capture_default_str();
  s_msd->add_option("--v-max", msd.v_max, "Highest speed [km/h]")->capture_default_str();
  s_msd->add_option("--v-step", msd.v_step, "Speed step [km/h]")->capture_default_str();
  s_msd->add_option("--trials", msd.mc_trials, "Monte Carlo trials per speed (0: analytic only)");
  s_msd->add_option("--seed", common.seed);
  s_msd->add_option("--threads", common.threads);
  add_common(s_msd, common, false);

  auto* s_sweep = app.add_subcommand("sweep-thresholds", "Average P_D over all threshold pairs");
  s_sweep->add_option("--lambda", sweep.lambda, "SBS intensity [km^-2]")->required();
  s_sweep->add_option("--T", sweep.T)->capture_default_str();
  s_sweep->add_option("--vl-kmh", sweep.vl_kmh)->capture_default_str();
  s_sweep->add_option("--vu-kmh", sweep.vu_kmh)->capture_default_str();
  s_sweep->add_option("--h-max", sweep.h_max)->capture_default_str();
  add_common(s_sweep, common, false);

  auto* s_rmse = app.add_subcommand("rmse", "Monte Carlo RMSE of the speed estimator");
  add_grid(s_rmse, rmse.grid, false);
  s_rmse->add_option("--deployment", rmse.deployment)->check(CLI::IsMember({"ppp", "cluster", "hcp"}));
  s_rmse->add_option("--mobility", rmse.mobility)->check(CLI::IsMember({"linear", "rwp"}));
  s_rmse->add_option("--lambda0", rmse.lambda0, "Cluster parent intensity [km^-2]");
  s_rmse->add_option("--lambda1", rmse.lambda1, "Cluster daughter intensity [km^-2]");
  s_rmse->add_option("--R", rmse.R, "Cluster radius [km]");
  s_rmse->add_option("--rho", rmse.rho, "Hardcore fraction of the maximum radius");
  s_rmse->add_option("--xi", rmse.xi, "RWP mobility parameter [km^-2]");
  add_common(s_rmse, common, true);

  auto* s_trip = app.add_subcommand("trip", "Windowed estimates along a variable-speed trip");
  s_trip->add_option("--lambda", trip.lambda, "SBS intensity [km^-2]")->required();
  s_trip->add_option("--window", trip.window, "Window length [s]")->capture_default_str();
  s_trip->add_option("--profile", trip.profile)->check(CLI::IsMember({"train", "ramp", "constant"}));
  s_trip->add_option("--cruise-kmh", trip.cruise_kmh);
  s_trip->add_option("--ramp-s", trip.ramp_s);
  s_trip->add_option("--cruise-s", trip.cruise_s);
  s_trip->add_option("--from-kmh", trip.from_kmh);
  s_trip->add_option("--to-kmh", trip.to_kmh);
  s_trip->add_option("--duration-s", trip.duration_s);
  s_trip->add_option("--speed-kmh", trip.speed_kmh);
  s_trip->add_option("--vl-kmh", trip.vl_kmh);
  s_trip->add_option("--vu-kmh", trip.vu_kmh);
  s_trip->add_option("--seed", common.seed);
  s_trip->add_option("--threads", common.threads);
  add_common(s_trip, common, false);

  auto* s_replay = app.add_subcommand("replay", "Regenerate an output file from its embedded manifest");
  s_replay->add_option("file", replay_file, "CSV, JSON or .manifest.json file")->required()->check(CLI::ExistingFile);
  s_replay->add_option("--out,-o", common.out, "Output file (default: stdout)");
  s_replay->add_option("--threads", common.threads);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e_stream;
    const int code = app.exit(e, o, e_stream);
    out << o.str();
    err << e_stream.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (s_replay->parsed()) {
    std::vector<std::string> cmd;
    try {
      cmd = read_manifest_command(replay_file);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitRuntime;
    }
    if (cmd.empty() || cmd.front() == "replay") {
      err << "error: " << replay_file << ": manifest holds no replayable command\n";
      return kExitRuntime;
    }
    if (!common.out.empty()) cmd.insert(cmd.end(), {"--out", common.out});
    if (common.threads && cmd.front() != "estimate" && cmd.front() != "sweep-thresholds") {
      cmd.insert(cmd.end(), {"--threads", std::to_string(common.threads)});
    }
    return run_cli(cmd, out, err);
  }

  Job job;
  try {
    if (s_pmf->parsed()) job = prepare_pmf(pmf, common);
    else if (s_crlb->parsed()) job = prepare_crlb(crlb, common);
    else if (s_est->parsed()) job = prepare_estimate(est, common);
    else if (s_msd->parsed()) job = prepare_msd(msd, common);
    else if (s_sweep->parsed()) job = prepare_sweep(sweep, common);
    else if (s_rmse->parsed()) job = prepare_rmse(rmse, common);
    else job = prepare_trip(trip, common);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return execute(job, common, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace hocount

#include "hocount/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hocount/scenario.hpp"

namespace hocount {

Trajectory::Trajectory(std::vector<Waypoint> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) throw std::invalid_argument("Trajectory: need at least two waypoints");
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    if (!(waypoints_[i].t > waypoints_[i - 1].t)) {
      throw std::invalid_argument("Trajectory: timestamps must be strictly increasing");
    }
  }
}

double Trajectory::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    total += (waypoints_[i].pos - waypoints_[i - 1].pos).norm();
  }
  return total;
}

double Trajectory::length_between(double t0, double t1) const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    const Waypoint& a = waypoints_[i - 1];
    const Waypoint& b = waypoints_[i];
    const double lo = std::max(t0, a.t);
    const double hi = std::min(t1, b.t);
    if (hi <= lo) continue;
    total += (b.pos - a.pos).norm() * (hi - lo) / (b.t - a.t);
  }
  return total;
}

Point Trajectory::position_at(double t) const {
  if (t <= start_time()) return waypoints_.front().pos;
  if (t >= end_time()) return waypoints_.back().pos;
  const auto it = std::upper_bound(waypoints_.begin(), waypoints_.end(), t,
                                   [](double value, const Waypoint& w) { return value < w.t; });
  const Waypoint& b = *it;
  const Waypoint& a = *(it - 1);
  const double s = (t - a.t) / (b.t - a.t);
  return a.pos + s * (b.pos - a.pos);
}

Window Trajectory::bounding_box() const {
  Window w{waypoints_.front().pos.x(), waypoints_.front().pos.x(), waypoints_.front().pos.y(),
           waypoints_.front().pos.y()};
  for (const Waypoint& p : waypoints_) {
    w.x_min = std::min(w.x_min, p.pos.x());
    w.x_max = std::max(w.x_max, p.pos.x());
    w.y_min = std::min(w.y_min, p.pos.y());
    w.y_max = std::max(w.y_max, p.pos.y());
  }
  return w;
}

void RwpParams::validate() const {
  if (!(xi > 0.0)) throw std::invalid_argument("RwpParams: xi must be positive");
  if (!(v > 0.0)) throw std::invalid_argument("RwpParams: v must be positive");
  if (pause != 0.0) throw std::invalid_argument("RwpParams: only zero pause times are supported");
}

Trajectory linear_trajectory(double v, double T, const Point& origin, double angle) {
  if (!(v >= 0.0)) throw std::invalid_argument("linear_trajectory: v must be non-negative");
  if (!(T > 0.0)) throw std::invalid_argument("linear_trajectory: T must be positive");
  const Point end = origin + v * T * Point(std::cos(angle), std::sin(angle));
  return Trajectory({{0.0, origin}, {T, end}});
}

Trajectory sample_rwp(const RwpParams& params, double duration, const Point& origin, Rng& rng) {
  params.validate();
  if (!(duration > 0.0)) throw std::invalid_argument("sample_rwp: duration must be positive");
  std::vector<Waypoint> pts{{0.0, origin}};
  double t = 0.0;
  Point pos = origin;
  for (;;) {
    const double length = std::sqrt(-std::log(1.0 - rng.uniform()) / (params.xi * std::numbers::pi));
    const double heading = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const Point dir(std::cos(heading), std::sin(heading));
    const double leg_time = length / params.v;
    if (t + leg_time >= duration) {
      pts.push_back({duration, pos + params.v * (duration - t) * dir});
      break;
    }
    t += leg_time;
    pos += length * dir;
    // Zero-length transitions (U == 0) would repeat a timestamp.
    if (leg_time > 0.0) pts.push_back({t, pos});
  }
  return Trajectory(std::move(pts));
}

Trajectory sample_rwp(const RwpParams& params, double duration, const Point& origin,
                      std::uint64_t seed) {
  Rng rng(seed);
  return sample_rwp(params, duration, origin, rng);
}

Trajectory profile_trajectory(const SpeedProfile& profile, const Point& origin, double angle) {
  if (profile.empty()) throw std::invalid_argument("profile_trajectory: empty profile");
  const Point dir(std::cos(angle), std::sin(angle));
  std::vector<Waypoint> pts{{0.0, origin}};
  double t = 0.0;
  double s = 0.0;
  for (const SpeedLeg& leg : profile) {
    if (!(leg.duration > 0.0)) throw std::invalid_argument("profile_trajectory: leg durations must be positive");
    if (!(leg.speed >= 0.0)) throw std::invalid_argument("profile_trajectory: leg speeds must be non-negative");
    t += leg.duration;
    s += leg.duration * leg.speed;
    pts.push_back({t, origin + s * dir});
  }
  return Trajectory(std::move(pts));
}

double profile_duration(const SpeedProfile& profile) {
  double total = 0.0;
  for (const SpeedLeg& leg : profile) total += leg.duration;
  return total;
}

SpeedProfile ramp_profile(double from_kmh, double to_kmh, double duration_s) {
  if (!(duration_s >= 1.0)) throw std::invalid_argument("ramp_profile: duration must be >= 1 s");
  const auto legs = static_cast<int>(std::round(duration_s));
  SpeedProfile profile;
  profile.reserve(static_cast<std::size_t>(legs));
  for (int i = 0; i < legs; ++i) {
    const double frac = (i + 0.5) / legs;
    profile.push_back({1.0, kmh_to_canonical(from_kmh + (to_kmh - from_kmh) * frac)});
  }
  return profile;
}

SpeedProfile train_profile(double cruise_kmh, double ramp_s, double cruise_s) {
  SpeedProfile profile = ramp_profile(0.0, cruise_kmh, ramp_s);
  if (cruise_s > 0.0) profile.push_back({cruise_s, kmh_to_canonical(cruise_kmh)});
  const SpeedProfile down = ramp_profile(cruise_kmh, 0.0, ramp_s);
  profile.insert(profile.end(), down.begin(), down.end());
  return profile;
}

}  // namespace hocount

#pragma once

#include <cstdint>
#include <vector>

#include "hocount/geometry.hpp"
#include "hocount/rng.hpp"

namespace hocount {

struct Waypoint {
  double t = 0.0;  // s
  Point pos = Point::Zero();
};

/// Time-stamped polyline; the UE moves at constant speed between waypoints.
class Trajectory {
 public:
  Trajectory() = default;
  /// Throws std::invalid_argument if timestamps are not strictly increasing
  /// or fewer than two waypoints are given.
  explicit Trajectory(std::vector<Waypoint> waypoints);

  const std::vector<Waypoint>& waypoints() const { return waypoints_; }
  std::size_t segment_count() const { return waypoints_.size() - 1; }

  double start_time() const { return waypoints_.front().t; }
  double end_time() const { return waypoints_.back().t; }
  double duration() const { return end_time() - start_time(); }

  /// Sum of chord lengths.
  double length() const;
  /// Distance covered during [t0, t1] (clamped to the trajectory's span).
  double length_between(double t0, double t1) const;
  Point position_at(double t) const;
  /// Bounding box; may be degenerate (zero width or height).
  Window bounding_box() const;

 private:
  std::vector<Waypoint> waypoints_;
};

/// Random waypoint model with Rayleigh transition lengths,
/// P(L <= l) = 1 - exp(-xi pi l^2), constant speed and zero pauses.
struct RwpParams {
  double xi = 1.0;   // km^-2
  double v = 0.0;    // km/s
  double pause = 0.0;

  void validate() const;
};

struct SpeedLeg {
  double duration = 0.0;  // s
  double speed = 0.0;     // km/s
};

/// Straight-line trip made of constant-speed legs.
using SpeedProfile = std::vector<SpeedLeg>;

Trajectory linear_trajectory(double v, double T, const Point& origin = Point::Zero(),
                             double angle = 0.0);

/// Transition lengths by inversion L = sqrt(-ln(1 - U) / (xi pi)), headings
/// uniform on [-pi, pi]. The final transition is cut at `duration`.
Trajectory sample_rwp(const RwpParams& params, double duration, const Point& origin, Rng& rng);
Trajectory sample_rwp(const RwpParams& params, double duration, const Point& origin,
                      std::uint64_t seed);

Trajectory profile_trajectory(const SpeedProfile& profile, const Point& origin = Point::Zero(),
                              double angle = 0.0);

double profile_duration(const SpeedProfile& profile);

/// Accelerate / cruise / decelerate train trip: linear ramps in 1 s legs.
SpeedProfile train_profile(double cruise_kmh = 100.0, double ramp_s = 60.0, double cruise_s = 60.0);

/// Linear speed ramp from `from_kmh` to `to_kmh` over `duration_s`, in 1 s legs
/// evaluated at leg midpoints.
SpeedProfile ramp_profile(double from_kmh, double to_kmh, double duration_s);

}  // namespace hocount

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hocount/geometry.hpp"
#include "hocount/mobility.hpp"
#include "hocount/point_process.hpp"

namespace hocount {

struct Crossing {
  double t = 0.0;  // s
  Point pos = Point::Zero();
  Eigen::Index from = 0;
  Eigen::Index to = 0;
};

/// Number of Voronoi boundary crossings made along a trajectory.
struct HandoverCount {
  std::size_t h = 0;
  /// Filled only when requested; then crossings->size() == h.
  std::optional<std::vector<Crossing>> crossings;
  /// Largest distance from the trajectory to its serving site. Every site
  /// that can be nearest lies within this distance of the path.
  double max_serving_distance = 0.0;
};

/// Edge-effect margin 4 / sqrt(lambda).
double safety_margin(double lambda);

/// Bounding box of `traj` dilated by safety_margin(lambda).
Window safe_window_for(const Trajectory& traj, double lambda);

/// Euclidean-nearest site; ties go to the smallest index.
Eigen::Index nearest_site(const PointPattern& pattern, const Point& p);

/// Exact crossing count by walking perpendicular bisectors: from the serving
/// site s, the next handover on a segment is the earliest parameter at which
/// some other site becomes strictly nearer. Re-entering a cell counts again;
/// tangential contact does not count.
///
/// Throws std::invalid_argument for an empty pattern and std::out_of_range if
/// the trajectory does not lie inside the pattern window shrunk by
/// safety_margin(pattern.intensity_nominal).
HandoverCount count_handovers(const PointPattern& pattern, const Trajectory& traj,
                              bool record_crossings = false);

/// True if every site that could serve the trajectory is guaranteed to lie in
/// the pattern window, i.e. the trajectory's box dilated by the largest serving
/// distance fits inside. A false result means the count may be edge-biased.
bool edge_certificate(const PointPattern& pattern, const Trajectory& traj,
                      const HandoverCount& count);

}  // namespace hocount

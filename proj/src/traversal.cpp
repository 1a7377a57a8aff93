#include "hocount/traversal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hocount {

double safety_margin(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("safety_margin: lambda must be positive");
  return 4.0 / std::sqrt(lambda);
}

Window safe_window_for(const Trajectory& traj, double lambda) {
  return traj.bounding_box().dilated(safety_margin(lambda));
}

Eigen::Index nearest_site(const PointPattern& pattern, const Point& p) {
  if (pattern.empty()) throw std::invalid_argument("nearest_site: empty pattern");
  Eigen::Index best = 0;
  // minCoeff keeps the first minimum, which is the smallest-index tie-break.
  (pattern.points.colwise() - p).colwise().squaredNorm().minCoeff(&best);
  return best;
}

HandoverCount count_handovers(const PointPattern& pattern, const Trajectory& traj,
                              bool record_crossings) {
  if (pattern.empty()) throw std::invalid_argument("count_handovers: empty pattern");
  if (!pattern.window.contains(traj.bounding_box().dilated(safety_margin(pattern.intensity_nominal)))) {
    throw std::out_of_range("count_handovers: trajectory leaves the safe region of the pattern window");
  }

  const Eigen::Matrix2Xd& sites = pattern.points;
  const Eigen::Index n = sites.cols();
  const auto& wps = traj.waypoints();

  HandoverCount result;
  if (record_crossings) result.crossings.emplace();

  Eigen::Index serving = nearest_site(pattern, wps.front().pos);
  result.max_serving_distance = (sites.col(serving) - wps.front().pos).norm();

  for (std::size_t seg = 0; seg + 1 < wps.size(); ++seg) {
    const Point p0 = wps[seg].pos;
    const Point dir = wps[seg + 1].pos - p0;
    const double t0 = wps[seg].t;
    const double dt = wps[seg + 1].t - t0;
    double u = 0.0;

    // Along p(u) = p0 + u * dir, |p - x_j|^2 - |p - x_s|^2 is linear in u with
    // slope -2 dir.(x_j - x_s); site j overtakes s where it reaches zero.
    for (;;) {
      const Point pos = p0 + u * dir;
      const double d_serving = (pos - sites.col(serving)).squaredNorm();
      double best_u = 1.0;
      double best_slope = 0.0;
      Eigen::Index best = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == serving) continue;
        const double slope = 2.0 * dir.dot(sites.col(j) - sites.col(serving));
        if (slope <= 0.0) continue;
        const double gap = std::max(0.0, (pos - sites.col(j)).squaredNorm() - d_serving);
        const double uj = u + gap / slope;
        if (uj < best_u || (best >= 0 && uj == best_u && slope > best_slope)) {
          best_u = uj;
          best_slope = slope;
          best = j;
        }
      }
      if (best < 0) break;

      u = best_u;
      const Point at = p0 + u * dir;
      if (result.crossings) result.crossings->push_back({t0 + u * dt, at, serving, best});
      serving = best;
      ++result.h;
      result.max_serving_distance =
          std::max(result.max_serving_distance, (sites.col(serving) - at).norm());
    }
    // Distance to the serving site is convex within a cell, so its maximum
    // along the path is attained at crossings or waypoints.
    result.max_serving_distance =
        std::max(result.max_serving_distance, (sites.col(serving) - wps[seg + 1].pos).norm());
  }
  return result;
}

bool edge_certificate(const PointPattern& pattern, const Trajectory& traj,
                      const HandoverCount& count) {
  return pattern.window.contains(traj.bounding_box().dilated(count.max_serving_distance));
}

}  // namespace hocount

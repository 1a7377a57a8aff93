#pragma once

#include <cstdint>
#include <iosfwd>

#include <Eigen/Core>

#include "hocount/geometry.hpp"
#include "hocount/rng.hpp"

namespace hocount {

/// Finite set of small-cell sites in a window; the Voronoi generators.
struct PointPattern {
  Eigen::Matrix2Xd points;  // one column per site
  Window window;
  double intensity_nominal = 0.0;  // km^-2

  Eigen::Index size() const { return points.cols(); }
  bool empty() const { return points.cols() == 0; }
  auto site(Eigen::Index i) const { return points.col(i); }
};

/// Matern cluster process: parent PPP(lambda0), each parent spawning
/// PPP(lambda1) daughters uniformly in a disc of radius R.
struct ClusterParams {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double R = 0.0;

  void validate() const;
  /// lambda0 * lambda1 * pi * R^2, the matched homogeneous intensity.
  double equivalent_intensity() const;
};

/// Matern type-II hardcore process with target intensity lambda_hc and
/// hardcore distance R_hc = rho / sqrt(pi * lambda_hc), 0 <= rho < 1.
struct HcpParams {
  double lambda_hc = 0.0;
  double rho = 0.0;

  void validate() const;
  double R_hc() const;
  double R_hc_max() const;
};

/// Homogeneous PPP on `window`.
PointPattern sample_ppp(double lambda, const Window& window, Rng& rng);
PointPattern sample_ppp(double lambda, const Window& window, std::uint64_t seed);

/// Parents are drawn on the window dilated by R so that discs reaching into
/// the window from outside contribute; only daughters inside are kept.
PointPattern sample_matern_cluster(const ClusterParams& params, const Window& window, Rng& rng);
PointPattern sample_matern_cluster(const ClusterParams& params, const Window& window,
                                   std::uint64_t seed);

/// Parent intensity -ln(1 - lambda_hc pi R^2) / (pi R^2) that thins to
/// lambda_hc. Returns lambda_hc at R_hc = 0; throws std::domain_error when
/// R_hc >= 1 / sqrt(pi lambda_hc).
double hcp_parent_intensity(double lambda_hc, double R_hc);

/// Each parent carries a uniform 64-bit mark and survives iff no other parent
/// closer than R_hc has a smaller mark (equal marks: lower index wins).
/// Parents live on the window dilated by R_hc.
PointPattern sample_matern_hcp2(const HcpParams& params, const Window& window, Rng& rng);
PointPattern sample_matern_hcp2(const HcpParams& params, const Window& window, std::uint64_t seed);

}  // namespace hocount

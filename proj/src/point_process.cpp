#include "hocount/point_process.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace hocount {

void Window::validate() const {
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw std::invalid_argument("Window: need x_max > x_min and y_max > y_min");
  }
}

void ClusterParams::validate() const {
  if (!(lambda0 > 0.0) || !(lambda1 > 0.0) || !(R > 0.0)) {
    throw std::invalid_argument("ClusterParams: lambda0, lambda1 and R must be positive");
  }
}

double ClusterParams::equivalent_intensity() const {
  return lambda0 * lambda1 * std::numbers::pi * R * R;
}

void HcpParams::validate() const {
  if (!(lambda_hc > 0.0)) throw std::invalid_argument("HcpParams: lambda_hc must be positive");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("HcpParams: rho must be in [0, 1)");
}

double HcpParams::R_hc() const { return rho * R_hc_max(); }

double HcpParams::R_hc_max() const { return 1.0 / std::sqrt(std::numbers::pi * lambda_hc); }

namespace {

void append_uniform(std::vector<Point>& out, std::uint64_t n, const Window& w, Rng& rng) {
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = rng.uniform(w.x_min, w.x_max);
    const double y = rng.uniform(w.y_min, w.y_max);
    out.emplace_back(x, y);
  }
}

Eigen::Matrix2Xd to_matrix(const std::vector<Point>& pts) {
  Eigen::Matrix2Xd m(2, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
  return m;
}

}  // namespace

PointPattern sample_ppp(double lambda, const Window& window, Rng& rng) {
  if (!(lambda > 0.0)) throw std::invalid_argument("sample_ppp: lambda must be positive");
  window.validate();
  std::vector<Point> pts;
  const std::uint64_t n = rng.poisson(lambda * window.area());
  pts.reserve(n);
  append_uniform(pts, n, window, rng);
  return {to_matrix(pts), window, lambda};
}

PointPattern sample_ppp(double lambda, const Window& window, std::uint64_t seed) {
  Rng rng(seed);
  return sample_ppp(lambda, window, rng);
}

PointPattern sample_matern_cluster(const ClusterParams& params, const Window& window, Rng& rng) {
  params.validate();
  window.validate();
  const Window parents_window = window.dilated(params.R);
  std::vector<Point> parents;
  append_uniform(parents, rng.poisson(params.lambda0 * parents_window.area()), parents_window, rng);

  const double disc_mean = params.lambda1 * std::numbers::pi * params.R * params.R;
  std::vector<Point> pts;
  for (const Point& c : parents) {
    const std::uint64_t n = rng.poisson(disc_mean);
    for (std::uint64_t k = 0; k < n; ++k) {
      const double r = params.R * std::sqrt(rng.uniform());
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      const Point p = c + r * Point(std::cos(theta), std::sin(theta));
      if (window.contains(p)) pts.push_back(p);
    }
  }
  return {to_matrix(pts), window, params.equivalent_intensity()};
}

PointPattern sample_matern_cluster(const ClusterParams& params, const Window& window,
                                   std::uint64_t seed) {
  Rng rng(seed);
  return sample_matern_cluster(params, window, rng);
}

double hcp_parent_intensity(double lambda_hc, double R_hc) {
  if (!(lambda_hc > 0.0)) throw std::invalid_argument("hcp_parent_intensity: lambda_hc must be positive");
  if (!(R_hc >= 0.0)) throw std::invalid_argument("hcp_parent_intensity: R_hc must be non-negative");
  const double disc = std::numbers::pi * R_hc * R_hc;
  const double x = lambda_hc * disc;
  if (!(x < 1.0)) throw std::domain_error("hcp_parent_intensity: R_hc must be below 1/sqrt(pi lambda_hc)");
  if (x == 0.0) return lambda_hc;
  return -std::log1p(-x) / disc;
}

PointPattern sample_matern_hcp2(const HcpParams& params, const Window& window, Rng& rng) {
  params.validate();
  window.validate();
  const double r_hc = params.R_hc();
  const double lambda_parent = hcp_parent_intensity(params.lambda_hc, r_hc);
  const Window parents_window = window.dilated(r_hc);

  std::vector<Point> parents;
  append_uniform(parents, rng.poisson(lambda_parent * parents_window.area()), parents_window, rng);
  std::vector<std::uint64_t> marks(parents.size());
  for (auto& m : marks) m = rng.bits();

  std::vector<Point> kept;
  if (r_hc == 0.0) {
    for (const Point& p : parents) {
      if (window.contains(p)) kept.push_back(p);
    }
    return {to_matrix(kept), window, params.lambda_hc};
  }

  // Uniform grid with cell side r_hc: conflicting parents are in the 3x3 block.
  const auto cell_of = [&](const Point& p) {
    const auto ix = static_cast<std::int64_t>(std::floor((p.x() - parents_window.x_min) / r_hc));
    const auto iy = static_cast<std::int64_t>(std::floor((p.y() - parents_window.y_min) / r_hc));
    return std::pair{ix, iy};
  };
  const auto key = [](std::int64_t ix, std::int64_t iy) {
    return (static_cast<std::uint64_t>(ix) << 32) ^ static_cast<std::uint64_t>(iy & 0xffffffff);
  };
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    const auto [ix, iy] = cell_of(parents[i]);
    grid[key(ix, iy)].push_back(i);
  }

  const double r2 = r_hc * r_hc;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (!window.contains(parents[i])) continue;
    const auto [ix, iy] = cell_of(parents[i]);
    bool survives = true;
    for (std::int64_t dx = -1; dx <= 1 && survives; ++dx) {
      for (std::int64_t dy = -1; dy <= 1 && survives; ++dy) {
        const auto it = grid.find(key(ix + dx, iy + dy));
        if (it == grid.end()) continue;
        for (const std::size_t j : it->second) {
          if (j == i) continue;
          if ((parents[j] - parents[i]).squaredNorm() >= r2) continue;
          if (marks[j] < marks[i] || (marks[j] == marks[i] && j < i)) {
            survives = false;
            break;
          }
        }
      }
    }
    if (survives) kept.push_back(parents[i]);
  }
  return {to_matrix(kept), window, params.lambda_hc};
}

PointPattern sample_matern_hcp2(const HcpParams& params, const Window& window, std::uint64_t seed) {
  Rng rng(seed);
  return sample_matern_hcp2(params, window, rng);
}

}  // namespace hocount

#pragma once

#include <cmath>

/// Handover-count statistics for UE velocity estimation in Poisson-Voronoi
/// small-cell networks.
///
/// Units are km and s throughout; km/h appears only at I/O boundaries.
namespace hocount {

inline constexpr double kSecondsPerHour = 3600.0;

/// km/h -> km/s. Throws std::invalid_argument on negative speeds.
double kmh_to_canonical(double speed_kmh);

inline double canonical_to_kmh(double speed_kms) { return speed_kms * kSecondsPerHour; }

/// lambda * d^2, the intensity after rescaling lengths by the travel distance.
double scaled_intensity(double lambda, double d);

/// A (lambda, v, T) triple. All handover statistics depend on it only through
/// d * sqrt(lambda) with d = v * T.
class Scenario {
 public:
  /// lambda in km^-2, v in km/s, T in s.
  Scenario(double lambda, double v, double T);

  static Scenario from_kmh(double lambda, double v_kmh, double T) {
    return Scenario(lambda, kmh_to_canonical(v_kmh), T);
  }

  double lambda() const { return lambda_; }
  double v() const { return v_; }
  double T() const { return T_; }
  double v_kmh() const { return canonical_to_kmh(v_); }
  double d() const { return d_; }
  double d_sqrt_lambda() const { return d_sqrt_lambda_; }
  double lambda_prime() const { return lambda_prime_; }

  /// T * sqrt(lambda), the factor relating v to d*sqrt(lambda).
  double t_sqrt_lambda() const { return T_ * std::sqrt(lambda_); }

 private:
  double lambda_;
  double v_;
  double T_;
  double d_;
  double d_sqrt_lambda_;
  double lambda_prime_;
};

}  // namespace hocount

#include "hocount/scenario.hpp"

#include <stdexcept>

namespace hocount {

double kmh_to_canonical(double speed_kmh) {
  if (!(speed_kmh >= 0.0)) throw std::invalid_argument("speed must be non-negative");
  return speed_kmh / kSecondsPerHour;
}

double scaled_intensity(double lambda, double d) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(d >= 0.0)) throw std::invalid_argument("distance must be non-negative");
  return lambda * d * d;
}

Scenario::Scenario(double lambda, double v, double T) : lambda_(lambda), v_(v), T_(T) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Scenario: lambda must be positive");
  if (!(v >= 0.0)) throw std::invalid_argument("Scenario: v must be non-negative");
  if (!(T > 0.0)) throw std::invalid_argument("Scenario: T must be positive");
  d_ = v * T;
  lambda_prime_ = scaled_intensity(lambda, d_);
  // d_sqrt_lambda == sqrt(lambda_prime) exactly.
  d_sqrt_lambda_ = std::sqrt(lambda_prime_);
}

}  // namespace hocount

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

/// Special functions needed by the gamma handover-count model and its score.
///
/// All routines are templated on the scalar type (float, double, long double)
/// and are reentrant. Series that exhaust their term budget throw
/// SeriesError instead of returning a truncated sum.
namespace hocount::special {

struct SeriesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxTerms = 10000;

namespace detail {

template <typename Scalar>
Scalar eps() {
  return std::numeric_limits<Scalar>::epsilon();
}

template <typename Scalar>
void require_shape(Scalar a, const char* who) {
  if (!(a > Scalar(0)) || !std::isfinite(a)) {
    throw std::domain_error(std::string(who) + ": shape must be positive and finite");
  }
}

// exp(-x + a*log(x) - lgamma(a)), the prefactor shared by P and Q.
template <typename Scalar>
Scalar gamma_prefactor(Scalar a, Scalar x) {
  return std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// P(a, x) by its power series; used for x < a + 1.
template <typename Scalar>
Scalar gamma_p_series(Scalar a, Scalar x) {
  Scalar ap = a;
  Scalar term = Scalar(1) / a;
  Scalar sum = term;
  for (int n = 0; n < kMaxTerms; ++n) {
    ap += Scalar(1);
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * eps<Scalar>()) return sum * gamma_prefactor(a, x);
  }
  throw SeriesError("regularized_gamma_p: series did not converge");
}

// Q(a, x) by its continued fraction (modified Lentz); used for x >= a + 1.
template <typename Scalar>
Scalar gamma_q_fraction(Scalar a, Scalar x) {
  const Scalar tiny = std::numeric_limits<Scalar>::min() / eps<Scalar>();
  Scalar b = x + Scalar(1) - a;
  Scalar c = Scalar(1) / tiny;
  Scalar d = Scalar(1) / b;
  Scalar h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const Scalar an = -Scalar(i) * (Scalar(i) - a);
    b += Scalar(2);
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = Scalar(1) / d;
    const Scalar delta = d * c;
    h *= delta;
    if (std::fabs(delta - Scalar(1)) < eps<Scalar>()) return h * gamma_prefactor(a, x);
  }
  throw SeriesError("regularized_gamma_q: continued fraction did not converge");
}

}  // namespace detail

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
template <typename Scalar>
Scalar regularized_gamma_p(Scalar a, Scalar x) {
  detail::require_shape(a, "regularized_gamma_p");
  if (!(x >= Scalar(0))) throw std::domain_error("regularized_gamma_p: x must be non-negative");
  if (x == Scalar(0)) return Scalar(0);
  if (std::isinf(x)) return Scalar(1);
  if (x < a + Scalar(1)) return detail::gamma_p_series(a, x);
  return Scalar(1) - detail::gamma_q_fraction(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without
/// cancellation in the upper tail.
template <typename Scalar>
Scalar regularized_gamma_q(Scalar a, Scalar x) {
  detail::require_shape(a, "regularized_gamma_q");
  if (!(x >= Scalar(0))) throw std::domain_error("regularized_gamma_q: x must be non-negative");
  if (x == Scalar(0)) return Scalar(1);
  if (std::isinf(x)) return Scalar(0);
  if (x < a + Scalar(1)) return Scalar(1) - detail::gamma_p_series(a, x);
  return detail::gamma_q_fraction(a, x);
}

/// Lower incomplete gamma gamma(a, x) = int_0^x t^(a-1) e^(-t) dt (not regularized).
template <typename Scalar>
Scalar lower_incomplete_gamma(Scalar a, Scalar x) {
  return regularized_gamma_p(a, x) * std::exp(std::lgamma(a));
}

/// Regularized mass of the gamma(a, 1) law on [z1, z2]; z2 may be +inf.
/// Differences are taken on the tail (P or Q) where both endpoints are small,
/// so far-tail bins keep full relative precision.
template <typename Scalar>
Scalar gamma_interval_mass(Scalar a, Scalar z1, Scalar z2) {
  detail::require_shape(a, "gamma_interval_mass");
  if (!(z1 >= Scalar(0)) || !(z2 >= z1)) {
    throw std::domain_error("gamma_interval_mass: need 0 <= z1 <= z2");
  }
  if (z1 >= a) return regularized_gamma_q(a, z1) - regularized_gamma_q(a, z2);
  return regularized_gamma_p(a, z2) - regularized_gamma_p(a, z1);
}

/// Generalized incomplete gamma Gamma(a, z1, z2) = int_z1^z2 t^(a-1) e^(-t) dt
/// = gamma(a, z2) - gamma(a, z1).
template <typename Scalar>
Scalar generalized_incomplete_gamma(Scalar a, Scalar z1, Scalar z2) {
  return gamma_interval_mass(a, z1, z2) * std::exp(std::lgamma(a));
}

/// Digamma psi(x) for x > 0: upward recurrence to x >= 10, then the
/// asymptotic Bernoulli series.
template <typename Scalar>
Scalar digamma(Scalar x) {
  if (!(x > Scalar(0)) || !std::isfinite(x)) {
    throw std::domain_error("digamma: argument must be positive and finite");
  }
  Scalar result = Scalar(0);
  while (x < Scalar(10)) {
    result -= Scalar(1) / x;
    x += Scalar(1);
  }
  const Scalar inv = Scalar(1) / x;
  const Scalar inv2 = inv * inv;
  // B_2k / (2k) for k = 1..7, Horner in 1/x^2.
  const Scalar tail =
      inv2 * (Scalar(1) / Scalar(12) -
              inv2 * (Scalar(1) / Scalar(120) -
                      inv2 * (Scalar(1) / Scalar(252) -
                              inv2 * (Scalar(1) / Scalar(240) -
                                      inv2 * (Scalar(1) / Scalar(132) -
                                              inv2 * (Scalar(691) / Scalar(32760) -
                                                      inv2 * (Scalar(1) / Scalar(12))))))));
  return result + std::log(x) - Scalar(0.5) * inv - tail;
}

/// 2F2(a, a; a+1, a+1; -z) for a > 0, z >= 0.
///
/// The alternating Taylor series in -z cancels catastrophically once z is
/// more than a few units, so the sum is carried in the equivalent positive
/// form obtained by expanding e^{-zu} = e^{-z} e^{z(1-u)} in the integral
/// representation:
///
///   2F2 = a^2 e^{-z} Gamma(a) sum_k z^k H_k / Gamma(a + k + 1),
///   H_k = sum_{j=0..k} 1 / (a + j).
///
/// Every term is positive; the running sum is rescaled to stay in range.
template <typename Scalar>
Scalar hyp2f2_special(Scalar a, Scalar z) {
  detail::require_shape(a, "hyp2f2_special");
  if (!(z >= Scalar(0)) || !std::isfinite(z)) {
    throw std::domain_error("hyp2f2_special: z must be non-negative and finite");
  }
  if (z == Scalar(0)) return Scalar(1);

  const Scalar rescale = Scalar(1e200);
  const Scalar log_rescale = std::log(rescale);
  Scalar log_scale = Scalar(0);
  Scalar r = Scalar(1) / a;  // Gamma(a) z^k / Gamma(a + k + 1)
  Scalar harmonic = Scalar(1) / a;
  Scalar sum = r * harmonic;
  for (int k = 0; k < kMaxTerms; ++k) {
    const Scalar ratio = z / (a + Scalar(k + 1));
    r *= ratio;
    harmonic += Scalar(1) / (a + Scalar(k + 1));
    const Scalar term = r * harmonic;
    sum += term;
    if (sum > rescale) {
      sum /= rescale;
      r /= rescale;
      log_scale += log_rescale;
    }
    // Past the peak the terms fall at least geometrically with `ratio`;
    // the tail is bounded by term * ratio / (1 - ratio) up to the slowly
    // growing harmonic factor, covered by the factor 2.
    if (ratio < Scalar(0.9) &&
        Scalar(2) * term * ratio / (Scalar(1) - ratio) < sum * detail::eps<Scalar>()) {
      return a * a * sum * std::exp(log_scale - z);
    }
  }
  throw SeriesError("hyp2f2_special: series did not converge within term budget");
}

}  // namespace hocount::special

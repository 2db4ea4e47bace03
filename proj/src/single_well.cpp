#include "sshe/single_well.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sshe/errors.hpp"

namespace sshe {

void WellParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("well lambda must be > 0");
  if (!(width > 0.0) || !std::isfinite(width)) throw ValidationError("well width must be > 0");
}

BoundState solve_ground_state(const WellParams& well) {
  well.validate();
  const double lambda = well.lambda;
  const double half = 0.5 * well.width;
  const double upper = std::min(lambda, std::numbers::pi / well.width);

  // q sin(q w/2) - kappa cos(q w/2): same root as the tangent form, no pole,
  // strictly increasing on the bracket.
  auto matching = [&](double q) {
    const double kappa = std::sqrt((lambda - q) * (lambda + q));
    return q * std::sin(q * half) - kappa * std::cos(q * half);
  };

  double lo = 0.0;
  double hi = upper;
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (matching(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  BoundState s;
  s.q = 0.5 * (lo + hi);
  s.kappa = std::sqrt((lambda - s.q) * (lambda + s.q));
  s.e0 = -s.kappa * s.kappa;
  const double c = std::cos(s.q * half);
  const double inside = half + std::sin(s.q * well.width) / (2.0 * s.q);
  const double outside = c * c / s.kappa;
  s.norm = 1.0 / std::sqrt(inside + outside);
  return s;
}

double eval_wavefunction(const BoundState& s, const WellParams& well, double x) {
  const double half = 0.5 * well.width;
  const double ax = std::abs(x);
  if (ax <= half) return s.norm * std::cos(s.q * x);
  return s.norm * std::cos(s.q * half) * std::exp(-s.kappa * (ax - half));
}

double eval_wavefunction_derivative(const BoundState& s, const WellParams& well, double x) {
  const double half = 0.5 * well.width;
  const double ax = std::abs(x);
  if (ax <= half) return -s.norm * s.q * std::sin(s.q * x);
  const double sign = x > 0.0 ? 1.0 : -1.0;
  return -sign * s.kappa * s.norm * std::cos(s.q * half) * std::exp(-s.kappa * (ax - half));
}

AsymptoticEnergy asymptotic_energy(const WellParams& well) {
  well.validate();
  const double pi_over_w = std::numbers::pi / well.width;
  return {-well.lambda * well.lambda + pi_over_w * pi_over_w, well.lambda * well.width > std::numbers::pi};
}

}  // namespace sshe

#pragma once

namespace sshe {

/// Square well h = -d^2/dx^2 - lambda^2 chi_[-w/2, w/2].
struct WellParams {
  double lambda = 1.0;  ///< depth is lambda^2
  double width = 1.0;

  void validate() const;
};

/// Even ground state. Inside the well phi = A cos(q x); outside
/// phi = A cos(q w/2) exp(-kappa (|x| - w/2)).
struct BoundState {
  double e0 = 0.0;     ///< q^2 - lambda^2 = -kappa^2
  double q = 0.0;      ///< interior wavenumber
  double kappa = 0.0;  ///< exterior decay rate
  double norm = 0.0;   ///< A, so that the L2 norm is one
};

/// Solves q tan(q w/2) = sqrt(lambda^2 - q^2) on (0, min(lambda, pi/w)) by
/// bisection. A 1D well of any positive depth and width binds one even state.
BoundState solve_ground_state(const WellParams& well);

double eval_wavefunction(const BoundState& state, const WellParams& well, double x);
double eval_wavefunction_derivative(const BoundState& state, const WellParams& well, double x);

/// Leading-order deep-well energy -lambda^2 + pi^2 / w^2.
struct AsymptoticEnergy {
  double energy = 0.0;
  /// False when the estimate is not even a bound-state energy (lambda w <= pi),
  /// e.g. lambda = 10, w = 0.1.
  bool regime_valid = false;
};

AsymptoticEnergy asymptotic_energy(const WellParams& well);

}  // namespace sshe

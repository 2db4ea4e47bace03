#pragma once

#include <complex>
#include <vector>

#include "sshe/tridiagonal.hpp"

namespace sshe {

/// Hopping amplitudes of the two-site-per-cell SSH chain. Real and
/// non-negative: every case of interest is, and it keeps all matrices real
/// symmetric.
struct SshParams {
  double t_in = 1.0;   ///< A_n <-> B_n
  double t_out = 1.0;  ///< B_n <-> A_{n+1}

  /// True iff |t_in| != |t_out|, i.e. s(k) never vanishes.
  bool gapped() const noexcept;
  void validate() const;
};

/// s(k) = t_in + t_out e^{-ik}; k is reduced modulo 2 pi.
std::complex<double> bloch_symbol(const SshParams& p, double k);

struct DispersionPair {
  double minus;
  double plus;
};

/// E_pm(k) = pm |s(k)|.
DispersionPair dispersion(const SshParams& p, double k);

/// Width of the gap about zero, 2 |t_in - t_out|.
double spectral_gap(const SshParams& p);

/// Signed winding of k -> s(k) about the origin, from the summed argument
/// increments on a uniform grid of `n_samples` points (each increment taken
/// in (-pi, pi]). -1 in the non-trivial phase with this orientation.
int signed_winding_number(const SshParams& p, int n_samples);

/// Phase label |winding| in {0, 1}: 1 iff |t_in| < |t_out|.
/// Throws GapClosedError when |t_in| == |t_out|.
int winding_number(const SshParams& p, int n_samples = 256);

/// Open chain A_1 B_1 ... A_N B_N.
struct FiniteChain {
  int n_cells = 1;
  SshParams params;

  void validate() const;
  /// 2N x 2N real symmetric matrix, zero diagonal, off-diagonal
  /// t_in, t_out, t_in, ...
  SymmetricTridiagonal hamiltonian() const;
};

/// All 2N eigenvalues, ascending.
std::vector<double> finite_chain_spectrum(const FiniteChain& chain);

/// Number of eigenvalues with |E| < tol.
int edge_mode_count(const FiniteChain& chain, double tol);

/// Same, with the default tolerance spectral_gap / 4.
int edge_mode_count(const FiniteChain& chain);

}  // namespace sshe

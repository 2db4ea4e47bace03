#pragma once

#include <array>
#include <span>
#include <vector>

namespace sshe {

/// Periodic square-well crystal: wells of depth lambda^2 and widths w_a, w_b
/// at alternating spacings d_in (A -> B) and d_out (B -> next A).
struct CrystalSpec {
  double lambda = 0.0;
  double d_in = 0.5;
  double d_out = 0.5;
  double w_a = 0.1;
  double w_b = 0.1;

  double depth() const noexcept { return lambda * lambda; }
  double period() const noexcept { return d_in + d_out; }
  /// lambda >= 0 (0 is the free crystal), positive widths, non-overlapping wells.
  void validate() const;
};

/// Depth-0 crystal of period L.
CrystalSpec free_crystal(double period);

/// Piece of constant potential.
struct Segment {
  double length;
  double potential;
};

/// One period starting at the left edge of the A well:
/// [A well] [d_in gap] [B well] [d_out gap].
std::array<Segment, 4> unit_cell(const CrystalSpec& spec);

/// 2x2 real matrix acting on (psi, psi').
struct Transfer {
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

  double det() const noexcept { return m11 * m22 - m12 * m21; }
  double trace() const noexcept { return m11 + m22; }
  double max_abs() const noexcept;
  /// (*this) * rhs: rhs acts first.
  Transfer operator*(const Transfer& rhs) const noexcept;
};

/// Exact propagator across a constant-potential piece at energy E.
Transfer segment_transfer(double length, double potential, double energy);

/// Ordered product over `segments` (first segment acts first). No overflow guard.
Transfer transfer_product(std::span<const Segment> segments, double energy);

/// One-period monodromy. Throws StabilityError if an intermediate entry
/// exceeds 1e150.
Transfer monodromy(const CrystalSpec& spec, double energy);

/// Floquet discriminant tr M(E).
double discriminant(const CrystalSpec& spec, double energy);

/// Number of Dirichlet eigenvalues of one period below E, counted as the
/// zeros in (0, L) of the solution with psi(0) = 0, psi'(0) = 1.
int dirichlet_count(const CrystalSpec& spec, double energy);

enum class Quasimomentum { zero, pi };

double momentum_value(Quasimomentum k) noexcept;

struct BandPoint {
  int band;       ///< 1-based
  double k;       ///< 0 or pi
  double energy;  ///< mu_band(k)
};

struct BandSolverOptions {
  /// Absolute bisection tolerance; 0 bisects to the limit of double precision.
  double abs_tol = 0.0;
  /// Initial ceiling is ceiling_factor * (pi/L)^2, doubled up to
  /// ceiling_doublings times.
  double ceiling_factor = 20.0;
  int ceiling_doublings = 3;
};

/// n-th Dirichlet eigenvalue (1-based). Bands are separated by these: band n
/// lies in [nu_{n-1}, nu_n] with nu_0 = -lambda^2.
double dirichlet_eigenvalue(const CrystalSpec& spec, int n, const BandSolverOptions& opts = {});

/// Lowest n_bands solutions of tr M(E) = 2 cos k, ascending.
std::vector<BandPoint> band_edges(const CrystalSpec& spec, Quasimomentum k, int n_bands,
                                  const BandSolverOptions& opts = {});

/// mu_{1,2} at k = 0 and k = pi.
struct LowestBands {
  double mu1_0 = 0.0;
  double mu2_0 = 0.0;
  double mu1_pi = 0.0;
  double mu2_pi = 0.0;

  double gap0() const noexcept { return mu2_0 - mu1_0; }
  double gap_pi() const noexcept { return mu2_pi - mu1_pi; }
};

LowestBands lowest_bands(const CrystalSpec& spec, const BandSolverOptions& opts = {});

struct BandGap {
  double gap0;
  double gap_pi;
};

BandGap band_gap(const CrystalSpec& spec, const BandSolverOptions& opts = {});

struct DispersionSample {
  double k;
  double energy;
};

/// Band `band` on a uniform grid of n_k momenta in [0, pi]; parallel over k.
std::vector<DispersionSample> dispersion_curve(const CrystalSpec& spec, int band, int n_k,
                                               const BandSolverOptions& opts = {});

/// True if the energies are monotone (either direction) along the curve.
bool is_monotone(std::span<const DispersionSample> curve);

namespace serial {
std::vector<DispersionSample> dispersion_curve(const CrystalSpec& spec, int band, int n_k,
                                               const BandSolverOptions& opts = {});
}  // namespace serial

}  // namespace sshe

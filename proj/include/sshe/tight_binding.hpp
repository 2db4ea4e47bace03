#pragma once

#include <optional>
#include <vector>

#include "sshe/bloch.hpp"
#include "sshe/single_well.hpp"
#include "sshe/ssh_chain.hpp"
#include "sshe/tridiagonal.hpp"

namespace sshe {

/// Crystal with equal widths w and spacings d_in = d, d_out = d + alpha/lambda.
/// Negative alpha puts the longer spacing inside the cell.
CrystalSpec dimerized_crystal(double lambda, double d, double w, double alpha);

/// Translates phi_j = phi(. - s_j) of the single-well ground state, for sites
/// j in [first_site, last_site]. Even j are A sites (s_{2n} = nL), odd j are
/// B sites (s_{2n+1} = nL + d_in).
class OrbitalBasis {
 public:
  OrbitalBasis(const CrystalSpec& crystal, int first_site, int last_site);

  const CrystalSpec& crystal() const noexcept { return crystal_; }
  const WellParams& well() const noexcept { return well_; }
  const BoundState& orbital() const noexcept { return orbital_; }
  int first_site() const noexcept { return first_; }
  int last_site() const noexcept { return last_; }

  double site(int j) const noexcept;
  double orbital_value(int j, double x) const;

  /// <phi_j, (H - e0) phi_k>, via (H - e0) phi_k = (V - V_k) phi_k.
  /// Requires |j - k| <= 3 and both indices inside the window.
  double matrix_element(int j, int k) const;

  /// <phi_j, phi_k> over the whole line.
  double overlap(int j, int k) const;

 private:
  void check_window(int j, int k) const;
  /// Integral of phi_j phi_k over the well centred at s_m.
  double well_integral(int m, int j, int k) const;

  CrystalSpec crystal_;
  WellParams well_;
  BoundState orbital_;
  int first_;
  int last_;
};

/// Nearest-neighbour hoppings of the orbital matrix elements.
struct HoppingReport {
  double lambda = 0.0;
  double alpha = 0.0;
  double rho1 = 0.0;          ///< <phi_{2n}, (H - e0) phi_{2n+1}>, in-cell
  double rho2 = 0.0;          ///< <phi_{2n-1}, (H - e0) phi_{2n}>, out-of-cell
  double ratio = 0.0;         ///< rho2 / rho1
  double onsite = 0.0;        ///< <phi_0, (H - e0) phi_0>; dropped from the SSH limit
  double next_nearest = 0.0;  ///< <phi_0, (H - e0) phi_2>
  double overlap_in = 0.0;    ///< <phi_0, phi_1>
  double overlap_out = 0.0;   ///< <phi_{-1}, phi_0>
  double e0 = 0.0;
};

/// Requires w_a == w_b and d_out - d_in == alpha / lambda.
HoppingReport hopping_report(const CrystalSpec& crystal, double alpha);

/// Divide by the dominant hopping: (1, rho2/rho1) when |rho1| >= |rho2|,
/// (rho1/rho2, 1) otherwise.
SshParams ssh_limit(const HoppingReport& report);

/// Second-order discretization of the crystal on n_cells periods with
/// Dirichlet ends. The box starts in the middle of an out-of-cell gap, so
/// every cell reads [half d_out gap] [A] [d_in gap] [B] [half d_out gap].
/// Nodes sit on every segment boundary; each segment is uniformly subdivided.
class FiniteVolumeModel {
 public:
  static constexpr std::size_t kMaxDimension = std::size_t{1} << 22;

  /// `only_well`, when set, keeps a single well (global index 2c for the A
  /// well of cell c, 2c+1 for B) and removes the others.
  FiniteVolumeModel(const CrystalSpec& crystal, int n_cells, int points_per_cell,
                    std::optional<int> only_well = std::nullopt);

  const SymmetricTridiagonal& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return matrix_.size(); }
  int n_cells() const noexcept { return n_cells_; }

  /// Fraction of the eigenvector's L2 mass in each cell.
  std::vector<double> cell_mass(const std::vector<double>& eigenvector) const;

 private:
  int n_cells_;
  std::vector<int> node_cell_;
  SymmetricTridiagonal matrix_;
};

/// Lowest 2 n_cells eigenvalues. Needs n_cells >= 8, points_per_cell >= 256.
std::vector<double> finite_volume_spectrum(const CrystalSpec& crystal, int n_cells,
                                           int points_per_cell);

/// Finite-volume spectrum rescaled by the dominant hopping and compared with
/// the SSH band set +-[1 - r, 1 + r].
struct SpectralComparison {
  HoppingReport hopping;
  double e0_continuum = 0.0;
  double e0_discrete = 0.0;  ///< single well on the same mesh; used for rescaling
  double ratio = 0.0;        ///< r = min(|rho1|, |rho2|) / max(|rho1|, |rho2|)
  std::vector<double> energies;
  std::vector<double> rescaled;
  std::vector<bool> edge_artifact;  ///< > 50% of the mass in the two outer cells
  double delta = 0.0;               ///< max distance of non-artifact points to the band set
  int artifact_count = 0;
  int in_gap_count = 0;  ///< non-artifact points with |x| < (1 - r)/2
};

/// Distance from x to +-[1 - r, 1 + r].
double ssh_band_distance(double x, double r);

SpectralComparison compare_with_ssh(const CrystalSpec& crystal, double alpha, int n_cells,
                                    int points_per_cell);

}  // namespace sshe

#include "sshe/tight_binding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sshe/errors.hpp"
#include "sshe/parallel.hpp"

namespace sshe {

namespace {

constexpr double kQuadratureTol = 1e-12;
constexpr unsigned kQuadratureDepth = 15;
// Wells this many sites beyond the pair contribute below double precision.
constexpr int kWellReach = 6;
constexpr double kEqualHoppingTol = 1e-12;

template <typename F>
double integrate(F&& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, kQuadratureDepth,
                                                                        kQuadratureTol);
}

int floor_div2(int j) { return j >= 0 ? j / 2 : -((1 - j) / 2); }

}  // namespace

CrystalSpec dimerized_crystal(double lambda, double d, double w, double alpha) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be > 0");
  CrystalSpec spec{lambda, d, d + alpha / lambda, w, w};
  spec.validate();
  return spec;
}

OrbitalBasis::OrbitalBasis(const CrystalSpec& crystal, int first_site, int last_site)
    : crystal_(crystal), first_(first_site), last_(last_site) {
  crystal_.validate();
  if (!(crystal_.lambda > 0.0)) throw ValidationError("orbital basis needs lambda > 0");
  if (std::abs(crystal_.w_a - crystal_.w_b) > 1e-12 * std::max(crystal_.w_a, crystal_.w_b))
    throw ValidationError("orbital basis needs equal well widths (w_a == w_b)");
  if (last_ < first_) throw ValidationError("empty orbital window");
  well_ = {crystal_.lambda, crystal_.w_a};
  orbital_ = solve_ground_state(well_);
}

double OrbitalBasis::site(int j) const noexcept {
  const int cell = floor_div2(j);
  const double base = static_cast<double>(cell) * crystal_.period();
  return (j - 2 * cell == 0) ? base : base + crystal_.d_in;
}

double OrbitalBasis::orbital_value(int j, double x) const {
  return eval_wavefunction(orbital_, well_, x - site(j));
}

void OrbitalBasis::check_window(int j, int k) const {
  if (j < first_ || j > last_ || k < first_ || k > last_) {
    std::ostringstream os;
    os << "orbital index outside window [" << first_ << ", " << last_ << "]: (" << j << ", " << k
       << ")";
    throw WindowError(os.str());
  }
}

double OrbitalBasis::well_integral(int m, int j, int k) const {
  const double half = 0.5 * well_.width;
  const double centre = site(m);
  const double a = centre - half;
  const double b = centre + half;
  if (m != j && m != k) {
    // Both orbitals are pure exponential tails on this well.
    const double kappa = orbital_.kappa;
    const double c = orbital_.norm * std::cos(orbital_.q * half);
    const double sj = site(j);
    const double sk = site(k);
    const double exponent_a =
        -kappa * (std::abs(a - sj) - half) - kappa * (std::abs(a - sk) - half);
    const double sigma = (centre > sj ? 1.0 : -1.0) + (centre > sk ? 1.0 : -1.0);
    const double slope = -kappa * sigma;
    const double base = c * c * std::exp(exponent_a);
    if (slope == 0.0) return base * well_.width;
    return base * std::expm1(slope * well_.width) / slope;
  }
  return integrate([&](double x) { return orbital_value(j, x) * orbital_value(k, x); }, a, b);
}

double OrbitalBasis::matrix_element(int j, int k) const {
  check_window(j, k);
  if (std::abs(j - k) > 3) throw WindowError("matrix elements are only computed for |j - k| <= 3");
  const double depth = crystal_.depth();
  double total = 0.0;
  for (int m = std::min(j, k) - kWellReach; m <= std::max(j, k) + kWellReach; ++m) {
    if (m == k) continue;
    total += -depth * well_integral(m, j, k);
  }
  return total;
}

double OrbitalBasis::overlap(int j, int k) const {
  check_window(j, k);
  const double half = 0.5 * well_.width;
  std::vector<double> cuts = {site(j) - half, site(j) + half, site(k) - half, site(k) + half};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto product = [&](double x) { return orbital_value(j, x) * orbital_value(k, x); };
  // Exponential tails on both sides decay like exp(-2 kappa |x|).
  const double two_kappa = 2.0 * orbital_.kappa;
  double total = product(cuts.front()) / two_kappa + product(cuts.back()) / two_kappa;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(product, cuts[i], cuts[i + 1]);
  return total;
}

HoppingReport hopping_report(const CrystalSpec& crystal, double alpha) {
  crystal.validate();
  if (!(crystal.lambda > 0.0)) throw ValidationError("hopping report needs lambda > 0");
  const double expected = crystal.d_in + alpha / crystal.lambda;
  if (std::abs(crystal.d_out - expected) > 1e-12 * std::max(1.0, crystal.d_out)) {
    std::ostringstream os;
    os << "spacings must satisfy d_out = d_in + alpha/lambda (d_in=" << crystal.d_in
       << ", d_out=" << crystal.d_out << ", alpha=" << alpha << ", lambda=" << crystal.lambda << ")";
    throw ValidationError(os.str());
  }
  const OrbitalBasis basis(crystal, -4, 5);
  HoppingReport r;
  r.lambda = crystal.lambda;
  r.alpha = alpha;
  r.e0 = basis.orbital().e0;
  r.rho1 = basis.matrix_element(0, 1);
  r.rho2 = basis.matrix_element(-1, 0);
  r.ratio = r.rho2 / r.rho1;
  r.onsite = basis.matrix_element(0, 0);
  r.next_nearest = basis.matrix_element(0, 2);
  r.overlap_in = basis.overlap(0, 1);
  r.overlap_out = basis.overlap(-1, 0);
  return r;
}

SshParams ssh_limit(const HoppingReport& report) {
  const double dominant = std::abs(report.rho1) >= std::abs(report.rho2) ? report.rho1 : report.rho2;
  if (dominant == 0.0) throw NumericalError("both hoppings vanish; no SSH limit");
  SshParams p{report.rho1 / dominant, report.rho2 / dominant};
  // Equal spacings give equal hoppings up to summation order; treat them as equal.
  if (std::abs(p.t_in - p.t_out) <= kEqualHoppingTol) p.t_in = p.t_out = 1.0;
  p.validate();
  return p;
}

FiniteVolumeModel::FiniteVolumeModel(const CrystalSpec& crystal, int n_cells, int points_per_cell,
                                     std::optional<int> only_well)
    : n_cells_(n_cells), matrix_({0.0}, {}) {
  crystal.validate();
  if (n_cells < 1) throw ValidationError("finite volume needs at least one cell");
  if (points_per_cell < 4) throw ValidationError("points_per_cell too small");
  const double estimate = static_cast<double>(n_cells) * static_cast<double>(points_per_cell);
  if (estimate > static_cast<double>(kMaxDimension)) {
    std::ostringstream os;
    os << "finite-volume matrix dimension ~" << estimate << " exceeds the limit " << kMaxDimension;
    throw ResourceError(os.str());
  }

  const double period = crystal.period();
  const double mean_width = 0.5 * (crystal.w_a + crystal.w_b);
  const double gap_in = crystal.d_in - mean_width;
  const double half_out = 0.5 * (crystal.d_out - mean_width);
  const double depth = crystal.depth();
  const double h_target = period / static_cast<double>(points_per_cell);

  struct Piece {
    double length;
    double potential;
    int cell;
  };
  std::vector<Piece> pieces;
  pieces.reserve(static_cast<std::size_t>(5 * n_cells));
  for (int c = 0; c < n_cells; ++c) {
    auto well_potential = [&](int index) {
      return (!only_well || *only_well == index) ? -depth : 0.0;
    };
    pieces.push_back({half_out, 0.0, c});
    pieces.push_back({crystal.w_a, well_potential(2 * c), c});
    pieces.push_back({gap_in, 0.0, c});
    pieces.push_back({crystal.w_b, well_potential(2 * c + 1), c});
    pieces.push_back({half_out, 0.0, c});
  }

  // Mesh: spacings h_i between consecutive nodes, potential per node, cell per node.
  std::vector<double> spacing;
  std::vector<double> node_potential;  // interior nodes only
  std::vector<int> node_cell;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const Piece& piece = pieces[p];
    const int subdivisions = std::max(2, static_cast<int>(std::lround(piece.length / h_target)));
    const double h = piece.length / subdivisions;
    for (int s = 0; s < subdivisions; ++s) {
      spacing.push_back(h);
      if (s > 0) {
        node_potential.push_back(piece.potential);
        node_cell.push_back(piece.cell);
      }
    }
    if (p + 1 < pieces.size()) {
      // Node on the boundary with the next piece: spacing-weighted average.
      const Piece& next = pieces[p + 1];
      const double h_next = next.length / std::max(2, static_cast<int>(std::lround(next.length / h_target)));
      node_potential.push_back((h * piece.potential + h_next * next.potential) / (h + h_next));
      node_cell.push_back(piece.cell);
    }
  }

  const std::size_t n = node_potential.size();
  if (n > kMaxDimension) throw ResourceError("finite-volume matrix dimension exceeds the limit");
  // Lumped-mass three-point Laplacian on the non-uniform mesh, symmetrized
  // with M^{1/2}. Node i sits between spacing[i] (left) and spacing[i + 1].
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) mass[i] = 0.5 * (spacing[i] + spacing[i + 1]);
  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    diag[i] = (1.0 / spacing[i] + 1.0 / spacing[i + 1]) / mass[i] + node_potential[i];
  for (std::size_t i = 0; i + 1 < n; ++i)
    off[i] = -1.0 / (spacing[i + 1] * std::sqrt(mass[i] * mass[i + 1]));
  matrix_ = SymmetricTridiagonal(std::move(diag), std::move(off));
  node_cell_ = std::move(node_cell);
}

std::vector<double> FiniteVolumeModel::cell_mass(const std::vector<double>& eigenvector) const {
  if (eigenvector.size() != node_cell_.size()) throw ValidationError("eigenvector size mismatch");
  std::vector<double> mass(static_cast<std::size_t>(n_cells_), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < eigenvector.size(); ++i) {
    const double w = eigenvector[i] * eigenvector[i];
    mass[static_cast<std::size_t>(node_cell_[i])] += w;
    total += w;
  }
  if (total > 0.0)
    for (double& m : mass) m /= total;
  return mass;
}

namespace {

void check_finite_volume_args(int n_cells, int points_per_cell) {
  if (n_cells < 8) throw ValidationError("finite-volume spectrum needs n_cells >= 8");
  if (points_per_cell < 256) throw ValidationError("finite-volume spectrum needs points_per_cell >= 256");
}

}  // namespace

std::vector<double> finite_volume_spectrum(const CrystalSpec& crystal, int n_cells,
                                           int points_per_cell) {
  check_finite_volume_args(n_cells, points_per_cell);
  const FiniteVolumeModel model(crystal, n_cells, points_per_cell);
  return eigenvalues(model.matrix(), 0, static_cast<std::size_t>(2 * n_cells));
}

double ssh_band_distance(double x, double r) {
  const double inner = std::abs(1.0 - r);
  const double outer = 1.0 + r;
  const double ax = std::abs(x);
  if (ax < inner) return inner - ax;
  if (ax > outer) return ax - outer;
  return 0.0;
}

SpectralComparison compare_with_ssh(const CrystalSpec& crystal, double alpha, int n_cells,
                                    int points_per_cell) {
  check_finite_volume_args(n_cells, points_per_cell);
  SpectralComparison out;
  out.hopping = hopping_report(crystal, alpha);
  out.e0_continuum = out.hopping.e0;

  const FiniteVolumeModel model(crystal, n_cells, points_per_cell);
  const std::size_t count = static_cast<std::size_t>(2 * n_cells);
  out.energies = eigenvalues(model.matrix(), 0, count);

  // Single well in the middle of the box, same mesh.
  const FiniteVolumeModel reference(crystal, n_cells, points_per_cell, 2 * (n_cells / 2));
  out.e0_discrete = reference.matrix().eigenvalue(0);

  const double a1 = std::abs(out.hopping.rho1);
  const double a2 = std::abs(out.hopping.rho2);
  const double dominant = std::max(a1, a2);
  out.ratio = std::min(a1, a2) / dominant;

  out.rescaled.resize(count);
  out.edge_artifact.resize(count);
  std::vector<std::vector<double>> masses(count);
  parallel_for(static_cast<std::ptrdiff_t>(count), [&](std::ptrdiff_t i) {
    const auto idx = static_cast<std::size_t>(i);
    masses[idx] = model.cell_mass(model.matrix().eigenvector(out.energies[idx]));
  });
  const double gap_half = 0.5 * std::abs(1.0 - out.ratio);
  for (std::size_t i = 0; i < count; ++i) {
    out.rescaled[i] = (out.energies[i] - out.e0_discrete) / dominant;
    const double outer = masses[i].front() + masses[i].back();
    out.edge_artifact[i] = outer > 0.5;
    if (out.edge_artifact[i]) {
      ++out.artifact_count;
      continue;
    }
    out.delta = std::max(out.delta, ssh_band_distance(out.rescaled[i], out.ratio));
    if (std::abs(out.rescaled[i]) < gap_half) ++out.in_gap_count;
  }
  return out;
}

}  // namespace sshe

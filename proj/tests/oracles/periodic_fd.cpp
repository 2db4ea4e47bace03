#include "oracles/periodic_fd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

PeriodicGrid periodic_grid(const sshe::CrystalSpec& spec, int points_per_cell, bool antiperiodic) {
  const double depth = -spec.lambda * spec.lambda;
  const double mean_w = 0.5 * (spec.w_a + spec.w_b);
  const double period = spec.d_in + spec.d_out;
  struct Piece {
    double length;
    double v;
  };
  const Piece pieces[] = {{spec.w_a, depth},
                          {spec.d_in - mean_w, 0.0},
                          {spec.w_b, depth},
                          {spec.d_out - mean_w, 0.0}};

  // h[i] is the step from node i to node i+1 (node N is node 0 again);
  // left/right potentials of each node.
  std::vector<double> h, v_left, v_right;
  for (const Piece& p : pieces) {
    const int n = std::max(2, static_cast<int>(std::lround(p.length / period * points_per_cell)));
    for (int j = 0; j < n; ++j) {
      h.push_back(p.length / n);
      v_right.push_back(p.v);
      v_left.push_back(p.v);
    }
  }
  const std::size_t n = h.size();
  // node i sits at the left end of step i; its left neighbour step is i-1
  for (std::size_t i = 0; i < n; ++i) v_left[i] = v_right[(i + n - 1) % n];

  std::vector<double> mass(n), pot(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hl = h[(i + n - 1) % n];
    const double hr = h[i];
    mass[i] = 0.5 * (hl + hr);
    pot[i] = (hl * v_left[i] + hr * v_right[i]) / (hl + hr);
  }
  PeriodicGrid g;
  g.diag.resize(n);
  g.off.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hl = h[(i + n - 1) % n];
    g.diag[i] = (1.0 / hl + 1.0 / h[i]) / mass[i] + pot[i];
    g.off[i] = -1.0 / (h[i] * std::sqrt(mass[i] * mass[(i + 1) % n]));
  }
  if (antiperiodic) g.off.back() = -g.off.back();
  return g;
}

int cyclic_count_below(const PeriodicGrid& g, double sigma) {
  const std::size_t n = g.diag.size();
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  const auto guard = [&](double d) { return std::abs(d) < tiny ? -tiny : d; };
  int count = 0;
  // Eliminate rows 0..n-2; u carries the coupling of row i to the last row.
  double d = guard(g.diag[0] - sigma);
  double u = g.off[n - 1];
  double schur = 0.0;  // accumulates u_i^2 / d_i
  for (std::size_t i = 0; i + 1 < n - 1; ++i) {
    if (d < 0) ++count;
    schur += u * u / d;
    const double b = g.off[i];
    const double d_next = guard(g.diag[i + 1] - sigma - b * b / d);
    double u_next = -b * u / d;
    if (i + 2 == n - 1) u_next += g.off[n - 2];
    d = d_next;
    u = u_next;
  }
  if (d < 0) ++count;
  schur += u * u / d;
  const double last = g.diag[n - 1] - sigma - schur;
  if (last < 0) ++count;
  return count;
}

std::vector<double> lowest_eigenvalues(const PeriodicGrid& g, int n) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t m = g.diag.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double r = std::abs(g.off[i]) + std::abs(g.off[(i + m - 1) % m]);
    lo = std::min(lo, g.diag[i] - r);
    hi = std::max(hi, g.diag[i] + r);
  }
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    double a = lo, b = hi;
    while (true) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (cyclic_count_below(g, mid) > k)
        b = mid;
      else
        a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

std::vector<double> band_energies_fd(const sshe::CrystalSpec& spec, bool zone_edge, int n,
                                     int points_per_cell) {
  return lowest_eigenvalues(periodic_grid(spec, points_per_cell, zone_edge), n);
}

}  // namespace oracle

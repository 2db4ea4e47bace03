#include "sshe/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sshe/errors.hpp"
#include "sshe/parallel.hpp"

namespace sshe {

namespace {

constexpr double kOverflowGuard = 1e150;
constexpr double kSeriesThreshold = 1e-3;  // |z| l^2 below this uses Taylor series
constexpr int kMaxBisections = 400;

// cos(sqrt(z) l) and sin(sqrt(z) l) / sqrt(z), analytic in z (cosh/sinh for z < 0).
void propagator_entries(double z, double length, double& c, double& s) {
  const double arg = z * length * length;
  if (std::abs(arg) < kSeriesThreshold) {
    // c = sum (-arg)^n / (2n)!,  s = l sum (-arg)^n / (2n+1)!
    double term_c = 1.0;
    double term_s = 1.0;
    c = 1.0;
    s = 1.0;
    for (int n = 1; n <= 8; ++n) {
      term_c *= -arg / static_cast<double>((2 * n - 1) * (2 * n));
      term_s *= -arg / static_cast<double>((2 * n) * (2 * n + 1));
      c += term_c;
      s += term_s;
    }
    s *= length;
    return;
  }
  if (z > 0.0) {
    const double q = std::sqrt(z);
    c = std::cos(q * length);
    s = std::sin(q * length) / q;
  } else {
    const double kappa = std::sqrt(-z);
    c = std::cosh(kappa * length);
    s = std::sinh(kappa * length) / kappa;
  }
}

std::string describe(const CrystalSpec& s) {
  std::ostringstream os;
  os << "(lambda=" << s.lambda << ", d_in=" << s.d_in << ", d_out=" << s.d_out
     << ", w_a=" << s.w_a << ", w_b=" << s.w_b << ")";
  return os.str();
}

double lowest_energy_bound(const CrystalSpec& spec) {
  const double depth = spec.depth();
  return -depth - 1e-9 * std::max(1.0, depth);
}

// Bisection for D(E) = target on [lo, hi], where D - target changes sign or
// vanishes at an endpoint (closed gap).
double solve_discriminant(const CrystalSpec& spec, double target, double lo, double hi,
                          const BandSolverOptions& opts) {
  double f_lo = discriminant(spec, lo) - target;
  double f_hi = discriminant(spec, hi) - target;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    // Tangential touching at a Dirichlet eigenvalue: the gap is closed there.
    const double best = std::min(std::abs(f_lo), std::abs(f_hi));
    if (best > 1e-6) {
      std::ostringstream os;
      os << "no band edge with tr M = " << target << " in [" << lo << ", " << hi << "] for "
         << describe(spec);
      throw NumericalError(os.str());
    }
    return std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
  }
  for (int iter = 0; iter < kMaxBisections; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (opts.abs_tol > 0.0 && hi - lo <= opts.abs_tol) break;
    const double f_mid = discriminant(spec, mid) - target;
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// nu_0 (= lower spectral bound) through nu_n.
std::vector<double> dirichlet_separators(const CrystalSpec& spec, int n,
                                         const BandSolverOptions& opts) {
  std::vector<double> nu(static_cast<std::size_t>(n) + 1);
  nu[0] = lowest_energy_bound(spec);
  for (int i = 1; i <= n; ++i) nu[static_cast<std::size_t>(i)] = dirichlet_eigenvalue(spec, i, opts);
  return nu;
}

struct BandInterval {
  double at_zero;
  double at_pi;
};

BandInterval band_interval(const CrystalSpec& spec, const std::vector<double>& nu, int band,
                           const BandSolverOptions& opts) {
  const double lo = nu[static_cast<std::size_t>(band - 1)];
  const double hi = nu[static_cast<std::size_t>(band)];
  return {solve_discriminant(spec, 2.0, lo, hi, opts), solve_discriminant(spec, -2.0, lo, hi, opts)};
}

}  // namespace

void CrystalSpec::validate() const {
  const double values[] = {lambda, d_in, d_out, w_a, w_b};
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("crystal parameters must be finite " + describe(*this));
  if (lambda < 0.0) throw ValidationError("lambda must be >= 0 " + describe(*this));
  if (!(w_a > 0.0) || !(w_b > 0.0)) throw ValidationError("well widths must be > 0 " + describe(*this));
  const double mean_width = 0.5 * (w_a + w_b);
  if (!(d_in > mean_width) || !(d_out > mean_width))
    throw ValidationError("wells overlap: need d_in, d_out > (w_a + w_b)/2 " + describe(*this));
}

CrystalSpec free_crystal(double period) {
  return {0.0, 0.5 * period, 0.5 * period, 0.1 * period, 0.1 * period};
}

std::array<Segment, 4> unit_cell(const CrystalSpec& spec) {
  const double v = -spec.depth();
  const double mean_width = 0.5 * (spec.w_a + spec.w_b);
  return {{{spec.w_a, v},
           {spec.d_in - mean_width, 0.0},
           {spec.w_b, v},
           {spec.d_out - mean_width, 0.0}}};
}

double Transfer::max_abs() const noexcept {
  return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

Transfer Transfer::operator*(const Transfer& r) const noexcept {
  return {m11 * r.m11 + m12 * r.m21, m11 * r.m12 + m12 * r.m22, m21 * r.m11 + m22 * r.m21,
          m21 * r.m12 + m22 * r.m22};
}

Transfer segment_transfer(double length, double potential, double energy) {
  if (!(length > 0.0)) throw ValidationError("segment length must be > 0");
  const double z = energy - potential;
  double c = 0.0;
  double s = 0.0;
  propagator_entries(z, length, c, s);
  return {c, s, -z * s, c};
}

Transfer transfer_product(std::span<const Segment> segments, double energy) {
  Transfer m;
  for (const Segment& seg : segments) m = segment_transfer(seg.length, seg.potential, energy) * m;
  return m;
}

Transfer monodromy(const CrystalSpec& spec, double energy) {
  Transfer m;
  for (const Segment& seg : unit_cell(spec)) {
    m = segment_transfer(seg.length, seg.potential, energy) * m;
    if (!(m.max_abs() <= kOverflowGuard)) {
      std::ostringstream os;
      os << "monodromy overflow at E=" << energy << " for " << describe(spec);
      throw StabilityError(os.str());
    }
  }
  return m;
}

double discriminant(const CrystalSpec& spec, double energy) { return monodromy(spec, energy).trace(); }

int dirichlet_count(const CrystalSpec& spec, double energy) {
  double u = 0.0;
  double v = 1.0;
  int zeros = 0;
  for (const Segment& seg : unit_cell(spec)) {
    const double z = energy - seg.potential;
    const Transfer t = segment_transfer(seg.length, seg.potential, energy);
    const double u_next = t.m11 * u + t.m12 * v;
    const double v_next = t.m21 * u + t.m22 * v;
    if (z > 0.0) {
      // Prufer phase advances by exactly q l inside the piece.
      const double q = std::sqrt(z);
      double theta = std::atan2(u, v / q);
      if (theta < 0.0) theta += std::numbers::pi;
      if (theta >= std::numbers::pi) theta -= std::numbers::pi;
      zeros += static_cast<int>(std::floor((theta + q * seg.length) / std::numbers::pi));
    } else if (u != 0.0 && (u_next == 0.0 || (u_next > 0.0) != (u > 0.0))) {
      ++zeros;  // at most one zero without oscillation
    }
    const double scale = std::max(std::abs(u_next), std::abs(v_next));
    u = u_next / scale;
    v = v_next / scale;
  }
  return zeros;
}

double momentum_value(Quasimomentum k) noexcept {
  return k == Quasimomentum::zero ? 0.0 : std::numbers::pi;
}

double dirichlet_eigenvalue(const CrystalSpec& spec, int n, const BandSolverOptions& opts) {
  spec.validate();
  if (n < 1) throw ValidationError("Dirichlet eigenvalue index must be >= 1");
  const double pi_over_l = std::numbers::pi / spec.period();
  double hi = std::max(1.0, opts.ceiling_factor * pi_over_l * pi_over_l);
  int doublings = 0;
  while (dirichlet_count(spec, hi) < n) {
    if (doublings == opts.ceiling_doublings) {
      std::ostringstream os;
      os << "insufficient scan range: fewer than " << n << " band edges below E=" << hi << " for "
         << describe(spec);
      throw ScanRangeError(os.str());
    }
    hi *= 2.0;
    ++doublings;
  }
  double lo = lowest_energy_bound(spec);
  for (int iter = 0; iter < kMaxBisections; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (opts.abs_tol > 0.0 && hi - lo <= opts.abs_tol) break;
    if (dirichlet_count(spec, mid) >= n) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<BandPoint> band_edges(const CrystalSpec& spec, Quasimomentum k, int n_bands,
                                  const BandSolverOptions& opts) {
  spec.validate();
  if (n_bands < 1) throw ValidationError("n_bands must be >= 1");
  const auto nu = dirichlet_separators(spec, n_bands, opts);
  const double target = k == Quasimomentum::zero ? 2.0 : -2.0;
  std::vector<BandPoint> out;
  out.reserve(static_cast<std::size_t>(n_bands));
  for (int b = 1; b <= n_bands; ++b) {
    const double e = solve_discriminant(spec, target, nu[static_cast<std::size_t>(b - 1)],
                                        nu[static_cast<std::size_t>(b)], opts);
    out.push_back({b, momentum_value(k), e});
  }
  return out;
}

LowestBands lowest_bands(const CrystalSpec& spec, const BandSolverOptions& opts) {
  spec.validate();
  const auto nu = dirichlet_separators(spec, 2, opts);
  const BandInterval band1 = band_interval(spec, nu, 1, opts);
  const BandInterval band2 = band_interval(spec, nu, 2, opts);
  return {band1.at_zero, band2.at_zero, band1.at_pi, band2.at_pi};
}

BandGap band_gap(const CrystalSpec& spec, const BandSolverOptions& opts) {
  const LowestBands b = lowest_bands(spec, opts);
  return {b.gap0(), b.gap_pi()};
}

namespace {

template <bool Parallel>
std::vector<DispersionSample> dispersion_impl(const CrystalSpec& spec, int band, int n_k,
                                              const BandSolverOptions& opts) {
  spec.validate();
  if (band < 1) throw ValidationError("band index must be >= 1");
  if (n_k < 2) throw ValidationError("dispersion curve needs n_k >= 2");
  const auto nu = dirichlet_separators(spec, band, opts);
  const BandInterval edges = band_interval(spec, nu, band, opts);
  const double lo = std::min(edges.at_zero, edges.at_pi);
  const double hi = std::max(edges.at_zero, edges.at_pi);

  std::vector<DispersionSample> out(static_cast<std::size_t>(n_k));
  auto fill = [&](int i) {
    const double k = (i == n_k - 1) ? std::numbers::pi
                                    : std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_k - 1);
    double e = 0.0;
    if (i == 0) {
      e = edges.at_zero;
    } else if (i == n_k - 1) {
      e = edges.at_pi;
    } else {
      e = solve_discriminant(spec, 2.0 * std::cos(k), lo, hi, opts);
    }
    out[static_cast<std::size_t>(i)] = {k, e};
  };
  if constexpr (Parallel) {
    parallel_for(n_k, [&](std::ptrdiff_t i) { fill(static_cast<int>(i)); });
  } else {
    for (int i = 0; i < n_k; ++i) fill(i);
  }
  return out;
}

}  // namespace

std::vector<DispersionSample> dispersion_curve(const CrystalSpec& spec, int band, int n_k,
                                               const BandSolverOptions& opts) {
  return dispersion_impl<true>(spec, band, n_k, opts);
}

namespace serial {
std::vector<DispersionSample> dispersion_curve(const CrystalSpec& spec, int band, int n_k,
                                               const BandSolverOptions& opts) {
  return dispersion_impl<false>(spec, band, n_k, opts);
}
}  // namespace serial

bool is_monotone(std::span<const DispersionSample> curve) {
  bool non_increasing = true;
  bool non_decreasing = true;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].energy > curve[i - 1].energy) non_increasing = false;
    if (curve[i].energy < curve[i - 1].energy) non_decreasing = false;
  }
  return non_increasing || non_decreasing;
}

}  // namespace sshe

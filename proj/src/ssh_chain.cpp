#include "sshe/ssh_chain.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sshe/errors.hpp"

namespace sshe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_momentum(double k) {
  double r = std::fmod(k, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

bool SshParams::gapped() const noexcept { return std::abs(t_in) != std::abs(t_out); }

void SshParams::validate() const {
  if (!std::isfinite(t_in) || !std::isfinite(t_out))
    throw ValidationError("SSH hoppings must be finite");
  if (t_in < 0.0 || t_out < 0.0)
    throw ValidationError("SSH hoppings must be non-negative (t_in=" + std::to_string(t_in) +
                          ", t_out=" + std::to_string(t_out) + ")");
}

std::complex<double> bloch_symbol(const SshParams& p, double k) {
  if (!std::isfinite(k)) throw ValidationError("momentum must be finite");
  const double kr = reduce_momentum(k);
  return {p.t_in + p.t_out * std::cos(kr), -p.t_out * std::sin(kr)};
}

DispersionPair dispersion(const SshParams& p, double k) {
  const double e = std::abs(bloch_symbol(p, k));
  return {-e, e};
}

double spectral_gap(const SshParams& p) { return 2.0 * std::abs(p.t_in - p.t_out); }

int signed_winding_number(const SshParams& p, int n_samples) {
  if (n_samples < 16) throw ValidationError("winding number needs at least 16 samples");
  if (!p.gapped())
    throw GapClosedError("gap closed: |t_in| == |t_out|, s(k) passes through the origin");
  double total = 0.0;
  double prev = std::arg(bloch_symbol(p, 0.0));
  for (int j = 1; j <= n_samples; ++j) {
    const double k = kTwoPi * static_cast<double>(j) / static_cast<double>(n_samples);
    const double cur = std::arg(bloch_symbol(p, j == n_samples ? 0.0 : k));
    double step = cur - prev;
    // fold into (-pi, pi]
    step -= kTwoPi * std::ceil((step - std::numbers::pi) / kTwoPi);
    total += step;
    prev = cur;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

int winding_number(const SshParams& p, int n_samples) {
  return std::abs(signed_winding_number(p, n_samples));
}

void FiniteChain::validate() const {
  if (n_cells < 1) throw ValidationError("finite chain needs at least one cell");
  params.validate();
}

SymmetricTridiagonal FiniteChain::hamiltonian() const {
  validate();
  const auto n = static_cast<std::size_t>(2 * n_cells);
  std::vector<double> diag(n, 0.0);
  std::vector<double> off(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = (i % 2 == 0) ? params.t_in : params.t_out;
  return {std::move(diag), std::move(off)};
}

std::vector<double> finite_chain_spectrum(const FiniteChain& chain) {
  return all_eigenvalues(chain.hamiltonian());
}

int edge_mode_count(const FiniteChain& chain, double tol) {
  int count = 0;
  for (double e : finite_chain_spectrum(chain))
    if (std::abs(e) < tol) ++count;
  return count;
}

int edge_mode_count(const FiniteChain& chain) {
  return edge_mode_count(chain, spectral_gap(chain.params) / 4.0);
}

}  // namespace sshe

#include "sshe/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sshe/errors.hpp"
#include "sshe/parallel.hpp"

namespace sshe {

void HomotopyConfig::validate() const {
  const double values[] = {lambda, d, w, alpha, beta};
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("homotopy parameters must be finite");
  if (!(lambda > 0.0)) throw ValidationError("homotopy needs lambda > 0");
  if (!(w > 0.0)) throw ValidationError("homotopy needs w > 0");
  if (beta < 0.0) throw ValidationError("homotopy needs beta >= 0");
  if (!(d > w)) throw ValidationError("homotopy needs d > w");
  if (!(w > beta)) throw ValidationError("homotopy needs w > beta so both widths stay positive");
  if (n_eps < 3) throw ValidationError("homotopy needs n_eps >= 3");
  // Mean width is w for every eps; the shortest spacing is d + min(0, alpha)/lambda.
  if (!(d + std::min(0.0, alpha) / lambda > w))
    throw ValidationError("wells overlap somewhere on the path: need d + min(0, alpha)/lambda > w");
}

HomotopyConfig reference_config() { return {}; }

CrystalSpec deformed_spec(const HomotopyConfig& config, double eps) {
  if (!(eps >= -1.0 && eps <= 1.0)) throw ValidationError("eps must lie in [-1, 1]");
  const double shift = config.alpha / config.lambda;
  const double lo = 0.5 * (1.0 - eps);
  const double hi = 0.5 * (1.0 + eps);
  const double asym = config.beta * (1.0 - std::abs(eps));
  CrystalSpec spec{config.lambda, lo * (config.d + shift) + hi * config.d,
                   lo * config.d + hi * (config.d + shift), config.w + asym, config.w - asym};
  spec.validate();
  return spec;
}

std::vector<double> eps_grid(int n_eps) {
  if (n_eps < 2) throw ValidationError("eps grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(n_eps));
  const int denom = n_eps - 1;
  for (int i = 0; i < n_eps; ++i)
    grid[static_cast<std::size_t>(i)] = static_cast<double>(2 * i - denom) / static_cast<double>(denom);
  return grid;
}

GapScanRow gap_scan_row(const HomotopyConfig& config, double eps) {
  const LowestBands b = lowest_bands(deformed_spec(config, eps));
  return {eps, b.mu1_0, b.mu2_0, b.mu1_pi, b.mu2_pi, b.gap0(), b.gap_pi()};
}

namespace {

GapScan summarize(std::vector<GapScanRow> rows) {
  GapScan scan;
  scan.rows = std::move(rows);
  scan.c_lambda = std::numeric_limits<double>::infinity();
  for (const GapScanRow& row : scan.rows) {
    const double g = std::min(row.gap0, row.gap_pi);
    if (g < scan.c_lambda) {
      scan.c_lambda = g;
      scan.eps_at_min = row.eps;
    }
  }
  return scan;
}

}  // namespace

GapScan gap_scan(const HomotopyConfig& config) {
  config.validate();
  const auto grid = eps_grid(config.n_eps);
  std::vector<GapScanRow> rows(grid.size());
  parallel_for(static_cast<std::ptrdiff_t>(grid.size()), [&](std::ptrdiff_t i) {
    rows[static_cast<std::size_t>(i)] = gap_scan_row(config, grid[static_cast<std::size_t>(i)]);
  });
  return summarize(std::move(rows));
}

namespace serial {

GapScan gap_scan(const HomotopyConfig& config) {
  config.validate();
  std::vector<GapScanRow> rows;
  for (double eps : eps_grid(config.n_eps)) rows.push_back(gap_scan_row(config, eps));
  return summarize(std::move(rows));
}

}  // namespace serial

EndpointTopology endpoint_topology(const HomotopyConfig& config) {
  config.validate();
  EndpointTopology t;
  const CrystalSpec minus = deformed_spec(config, -1.0);
  const CrystalSpec plus = deformed_spec(config, 1.0);
  t.report_minus = hopping_report(minus, config.lambda * (minus.d_out - minus.d_in));
  t.report_plus = hopping_report(plus, config.lambda * (plus.d_out - plus.d_in));
  t.limit_minus = ssh_limit(t.report_minus);
  t.limit_plus = ssh_limit(t.report_plus);
  t.index_minus = winding_number(t.limit_minus);
  t.index_plus = winding_number(t.limit_plus);
  return t;
}

}  // namespace sshe

#pragma once

#include <vector>

#include "sshe/bloch.hpp"
#include "sshe/tight_binding.hpp"

namespace sshe {

/// Deformation path eps in [-1, 1] between two dimerized crystals.
///   spacings (d_in, d_out) = (d + alpha (1 - eps) / (2 lambda), d + alpha (1 + eps) / (2 lambda))
///   widths   (w_a, w_b)    = (w + beta (1 - |eps|), w - beta (1 - |eps|))
struct HomotopyConfig {
  double lambda = 10.0;
  double d = 0.5;
  double w = 0.1;
  double alpha = 1.0 / 15.0;
  double beta = 1.0 / 20.0;
  int n_eps = 201;

  void validate() const;
};

/// lambda^2 = 100, d = 1/2, w = 1/10, beta = 1/20, alpha = 1/15, 201 samples.
HomotopyConfig reference_config();

CrystalSpec deformed_spec(const HomotopyConfig& config, double eps);

/// eps_i = (2i - (n-1)) / (n-1), exactly symmetric about 0.
std::vector<double> eps_grid(int n_eps);

struct GapScanRow {
  double eps = 0.0;
  double mu1_0 = 0.0;
  double mu2_0 = 0.0;
  double mu1_pi = 0.0;
  double mu2_pi = 0.0;
  double gap0 = 0.0;
  double gap_pi = 0.0;
};

struct GapScan {
  std::vector<GapScanRow> rows;
  double c_lambda = 0.0;      ///< min over rows of min(gap0, gap_pi)
  double eps_at_min = 0.0;
};

GapScanRow gap_scan_row(const HomotopyConfig& config, double eps);

/// Parallel map over eps; rows come back in grid order.
GapScan gap_scan(const HomotopyConfig& config);

namespace serial {
GapScan gap_scan(const HomotopyConfig& config);
}  // namespace serial

struct EndpointTopology {
  int index_minus = 0;  ///< winding of the limit at eps = -1
  int index_plus = 0;   ///< winding of the limit at eps = +1
  HoppingReport report_minus;
  HoppingReport report_plus;
  SshParams limit_minus;
  SshParams limit_plus;
};

/// Tight-binding limits of the two endpoint crystals (where w_a = w_b = w).
/// Throws GapClosedError for alpha = 0.
EndpointTopology endpoint_topology(const HomotopyConfig& config);

}  // namespace sshe

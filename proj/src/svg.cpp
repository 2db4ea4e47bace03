#include "sshe/svg.hpp"

#include <algorithm>
#include <sstream>

#include "sshe/csv.hpp"

namespace sshe {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 56.0;

std::string tick(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace

// gap0 and gapPi against eps, shared linear axes.
std::string gap_scan_svg(const GapScan& scan) {
  double y_max = 0.0;
  for (const auto& r : scan.rows) y_max = std::max({y_max, r.gap0, r.gap_pi});
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  const auto px = [](double eps) { return kMargin + (eps + 1.0) / 2.0 * (kWidth - 2 * kMargin); };
  const auto py = [&](double g) { return kHeight - kMargin - g / y_max * (kHeight - 2 * kMargin); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
     << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
     << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  for (double eps : {-1.0, -0.5, 0.0, 0.5, 1.0})
    os << "<text x=\"" << px(eps) << "\" y=\"" << kHeight - kMargin + 18 << "\" text-anchor=\"middle\">"
       << tick(eps) << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double g = y_max * i / 4.0;
    os << "<text x=\"" << kMargin - 6 << "\" y=\"" << py(g) + 4 << "\" text-anchor=\"end\">"
       << tick(g) << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">eps</text>\n"
     << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 " << kHeight / 2
     << ")\" text-anchor=\"middle\">gap</text>\n";

  const auto polyline = [&](auto value, const char* colour) {
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : scan.rows) os << px(r.eps) << "," << py(value(r)) << " ";
    os << "\"/>\n";
  };
  polyline([](const GapScanRow& r) { return r.gap0; }, "#1f77b4");
  polyline([](const GapScanRow& r) { return r.gap_pi; }, "#d62728");
  os << "<text x=\"" << kWidth - kMargin - 80 << "\" y=\"" << kMargin + 4 << "\" fill=\"#1f77b4\">gap0</text>\n"
     << "<text x=\"" << kWidth - kMargin - 80 << "\" y=\"" << kMargin + 20 << "\" fill=\"#d62728\">gapPi</text>\n"
     << "<text x=\"" << kMargin + 8 << "\" y=\"" << kMargin - 12 << "\">min gap " << format_number(scan.c_lambda)
     << " at eps = " << format_number(scan.eps_at_min) << "</text>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace sshe

#pragma once

#include <string>

#include "sshe/homotopy.hpp"

namespace sshe {

/// Self-contained SVG line chart of gap0 and gapPi against eps.
std::string gap_scan_svg(const GapScan& scan);

}  // namespace sshe

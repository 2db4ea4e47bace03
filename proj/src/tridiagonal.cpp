#include "sshe/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sshe/errors.hpp"
#include "sshe/parallel.hpp"

namespace sshe {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

}  // namespace

SymmetricTridiagonal::SymmetricTridiagonal(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
  if (diag_.empty()) throw ValidationError("tridiagonal matrix must be non-empty");
  if (off_.size() + 1 != diag_.size())
    throw ValidationError("tridiagonal off-diagonal must have size n-1");
  off_sq_.resize(off_.size());
  double max_sq = 1.0;
  for (std::size_t i = 0; i < off_.size(); ++i) {
    off_sq_[i] = off_[i] * off_[i];
    max_sq = std::max(max_sq, off_sq_[i]);
  }
  // Same pivot floor as LAPACK's dstebz.
  pivmin_ = kSafeMin * max_sq;

  lower_ = std::numeric_limits<double>::infinity();
  upper_ = -lower_;
  const std::size_t n = diag_.size();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off_[i - 1]);
    if (i + 1 < n) radius += std::abs(off_[i]);
    lower_ = std::min(lower_, diag_[i] - radius);
    upper_ = std::max(upper_, diag_[i] + radius);
  }
  const double pad = 2.0 * kEps * std::max(std::abs(lower_), std::abs(upper_)) + 4.0 * pivmin_;
  lower_ -= pad;
  upper_ += pad;
}

std::size_t SymmetricTridiagonal::count_below(double x) const {
  std::size_t count = 0;
  double pivot = diag_[0] - x;
  if (std::abs(pivot) < pivmin_) pivot = -pivmin_;
  if (pivot < 0.0) ++count;
  for (std::size_t i = 1; i < diag_.size(); ++i) {
    pivot = diag_[i] - x - off_sq_[i - 1] / pivot;
    if (std::abs(pivot) < pivmin_) pivot = -pivmin_;
    if (pivot < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> SymmetricTridiagonal::gershgorin_bounds() const {
  return {lower_, upper_};
}

double SymmetricTridiagonal::eigenvalue(std::size_t index) const {
  if (index >= size()) throw ValidationError("eigenvalue index out of range");
  double lo = lower_;
  double hi = upper_;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * pivmin_) break;
    if (count_below(mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> SymmetricTridiagonal::eigenvector(double eigenvalue) const {
  const std::size_t n = size();
  if (n == 1) return {1.0};

  // LU of (T - eigenvalue I) with partial pivoting, as in LAPACK dgttrf.
  std::vector<double> d(n), dl(off_), du(off_), du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<bool> swapped(n - 1, false);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag_[i] - eigenvalue;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag_[i]));
  for (double e : off_) scale = std::max(scale, std::abs(e));
  const double tiny = kEps * std::max(scale, kSafeMin);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;

  auto solve = [&](std::vector<double>& b) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;)
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  };

  auto normalize = [](std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    if (m > 0.0)
      for (double& x : v) x /= m;
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (double& x : v) x /= norm;
  };

  // Deterministic start vector with no special symmetry.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  normalize(v);
  for (int iter = 0; iter < 4; ++iter) {
    solve(v);
    normalize(v);
  }
  return v;
}

namespace serial {

std::vector<double> eigenvalues(const SymmetricTridiagonal& t, std::size_t first,
                                std::size_t count) {
  if (first + count > t.size()) throw ValidationError("eigenvalue range exceeds matrix size");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = t.eigenvalue(first + i);
  return out;
}

}  // namespace serial

std::vector<double> eigenvalues(const SymmetricTridiagonal& t, std::size_t first,
                                std::size_t count) {
  if (first + count > t.size()) throw ValidationError("eigenvalue range exceeds matrix size");
  std::vector<double> out(count);
  parallel_for(static_cast<std::ptrdiff_t>(count), [&](std::ptrdiff_t i) {
    out[static_cast<std::size_t>(i)] = t.eigenvalue(first + static_cast<std::size_t>(i));
  });
  return out;
}

std::vector<double> all_eigenvalues(const SymmetricTridiagonal& t) {
  return eigenvalues(t, 0, t.size());
}

}  // namespace sshe

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace sshe {

/// Real symmetric tridiagonal matrix with eigenvalues computed by
/// Sturm-sequence bisection.
class SymmetricTridiagonal {
 public:
  /// `off` holds the n-1 entries T(i, i+1).
  SymmetricTridiagonal(std::vector<double> diag, std::vector<double> off);

  std::size_t size() const noexcept { return diag_.size(); }
  std::span<const double> diagonal() const noexcept { return diag_; }
  std::span<const double> off_diagonal() const noexcept { return off_; }

  /// Number of eigenvalues strictly below `x` (inertia of T - xI).
  std::size_t count_below(double x) const;

  /// Interval containing the whole spectrum.
  std::pair<double, double> gershgorin_bounds() const;

  /// The `index`-th smallest eigenvalue (0-based), bisected until the
  /// bracket cannot shrink further in double precision.
  double eigenvalue(std::size_t index) const;

  /// Unit eigenvector for a converged eigenvalue, by inverse iteration with a
  /// partially pivoted tridiagonal LU.
  std::vector<double> eigenvector(double eigenvalue) const;

 private:
  std::vector<double> diag_;
  std::vector<double> off_;
  std::vector<double> off_sq_;
  double pivmin_ = 0.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

namespace serial {
/// Reference kernel: eigenvalues first .. first+count-1 in one thread.
std::vector<double> eigenvalues(const SymmetricTridiagonal& t, std::size_t first,
                                std::size_t count);
}  // namespace serial

/// OpenMP kernel: eigenvalues first .. first+count-1, one bisection per
/// thread. Produces bit-identical output to serial::eigenvalues.
std::vector<double> eigenvalues(const SymmetricTridiagonal& t, std::size_t first,
                                std::size_t count);

/// Full sorted spectrum.
std::vector<double> all_eigenvalues(const SymmetricTridiagonal& t);

}  // namespace sshe

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace sshe {

/// Environment variable capping the OpenMP thread count.
inline constexpr const char* kThreadsEnv = "SSH_EMERGENCE_THREADS";
/// Environment variable seeding randomized property tests.
inline constexpr const char* kSeedEnv = "SSH_EMERGENCE_SEED";

/// Applies SSH_EMERGENCE_THREADS (if set and positive) as the OpenMP thread
/// cap. Returns the resulting maximum thread count.
int configure_threads_from_env();

/// Seed from SSH_EMERGENCE_SEED, or `fallback` when unset or malformed.
unsigned long long seed_from_env(unsigned long long fallback);

/// OpenMP parallel loop over [0, n). The first exception thrown by `body`
/// is rethrown on the calling thread once the loop finishes.
template <typename Body>
void parallel_for(std::ptrdiff_t n, Body&& body) {
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace sshe

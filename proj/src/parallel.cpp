#include "sshe/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include <omp.h>

namespace sshe {

namespace {

template <typename T>
bool parse_env(const char* name, T& value) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return false;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

int configure_threads_from_env() {
  int cap = 0;
  if (parse_env(kThreadsEnv, cap) && cap > 0) omp_set_num_threads(cap);
  return omp_get_max_threads();
}

unsigned long long seed_from_env(unsigned long long fallback) {
  unsigned long long seed = 0;
  return parse_env(kSeedEnv, seed) ? seed : fallback;
}

}  // namespace sshe

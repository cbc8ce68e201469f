#include "cfgbounds/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace cfgbounds::parallel {

int thread_count() {
  if (const char* env = std::getenv("CONFIGBOUNDS_THREADS"); env != nullptr && *env != '\0') {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
      // fall through to the OpenMP default
    }
  }
  return omp_get_max_threads();
}

double blocked_sum(const std::vector<double>& block_partials) {
  double total = 0.0;
  for (double v : block_partials) total += v;
  return total;
}

}  // namespace cfgbounds::parallel

#include "triopo/execution.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace triopo {

int thread_count() {
  if (const char* env = std::getenv("TRIOPO_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // unparsable: fall through to the OpenMP default
    }
  }
  return omp_get_max_threads();
}

}  // namespace triopo

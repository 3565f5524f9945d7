#pragma once

namespace triopo {

/// How data-parallel kernels run. Both paths produce identical results; the
/// serial one is the reference the parallel one is tested against.
enum class Execution { serial, parallel };

/// Thread cap for parallel kernels: TRIOPO_THREADS if set to a positive
/// integer, otherwise the OpenMP default.
int thread_count();

}  // namespace triopo

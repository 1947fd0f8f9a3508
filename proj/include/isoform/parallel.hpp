#pragma once

#include <cstdlib>

namespace isoform {

/// Execution policy for the data-parallel kernels. `serial` runs the
/// reference loops; `parallel` runs the OpenMP versions.
enum class Exec { serial, parallel };

/// Runs body(i) for i in [0, n). Each index must write only its own output
/// slots, which keeps results independent of the thread count.
template <class Body>
void for_each_index(Exec exec, int n, Body&& body) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
}

/// Applies ISOFORM_THREADS (if set to a positive integer) as the OpenMP
/// thread cap. Returns the cap in effect.
int configure_threads_from_env();

int max_threads();

}  // namespace isoform

#pragma once

#include <cstddef>

namespace mss {

// Selects between the OpenMP kernels and their serial reference versions.
// `automatic` uses the parallel path only above a per-kernel work threshold.
enum class Exec { serial, parallel, automatic };

int max_threads();

}  // namespace mss

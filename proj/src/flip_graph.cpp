#include "flipcycles/flip_graph.hpp"

namespace flipcycles {

namespace {
int configured_threads = 0;
}

int parallel_threads() {
#ifdef FLIPCYCLES_HAVE_OPENMP
    return configured_threads > 0 ? configured_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

void set_parallel_threads(int threads) {
    if (threads < 0) throw ArgumentError("thread count must be non-negative");
    configured_threads = threads;
}

}  // namespace flipcycles

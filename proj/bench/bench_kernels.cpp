// Wall-clock comparison of the OpenMP kernels against their serial
// reference paths.  Build and run:
//   cmake --build build --target bench_kernels && ./build/bench_kernels

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "amo/approximation.hpp"

using namespace amo;

namespace {

double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, dt);
    }
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx\n", name, serial,
                parallel, serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled\n");
#endif

    {
        std::vector<double> energies;
        for (int i = 0; i < 16; ++i) energies.push_back(-5.9 + 11.8 * i / 15.0);
        auto serial = time_best_of(2, [&] {
            lyapunov_phase_average_sweep(2.0, golden(), energies, 4000, 128, Exec::serial);
        });
        auto parallel = time_best_of(2, [&] {
            lyapunov_phase_average_sweep(2.0, golden(), energies, 4000, 128, Exec::parallel);
        });
        report("lyapunov phase sweep", serial, parallel);
        auto a = lyapunov_phase_average_sweep(2.0, golden(), energies, 4000, 128, Exec::serial);
        auto b = lyapunov_phase_average_sweep(2.0, golden(), energies, 4000, 128, Exec::parallel);
        bool same = true;
        for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i].value == b[i].value;
        std::printf("%-28s %s\n", "  bitwise agreement", same ? "yes" : "NO");
    }

    {
        auto serial = time_best_of(2, [] { butterfly_dataset(1.0, 32, Exec::serial); });
        auto parallel = time_best_of(2, [] { butterfly_dataset(1.0, 32, Exec::parallel); });
        report("butterfly q <= 32", serial, parallel);
    }

    {
        Parameters par(1.0, golden(), 0.0);
        std::vector<double> grid;
        for (int i = 0; i < 600; ++i) grid.push_back(-4.2 + 8.4 * i / 599.0);
        auto serial = time_best_of(3, [&] { ids_estimate(par, grid, 6000, Exec::serial); });
        auto parallel = time_best_of(3, [&] { ids_estimate(par, grid, 6000, Exec::parallel); });
        report("ids sturm counts", serial, parallel);
    }

    return 0;
}

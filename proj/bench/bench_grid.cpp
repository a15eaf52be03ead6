// Serial vs OpenMP grid_residual timing on the doubly-warped sin/sin solution.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rsym/numerics.hpp"

using namespace rsym;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int ns = argc > 1 ? std::atoi(argv[1]) : 200;
    int nt = argc > 2 ? std::atoi(argv[2]) : 100;
    int reps = argc > 3 ? std::atoi(argv[3]) : 3;
    ClosedFormSolution sol =
        specialize(closed_form("dw_sinsin"), {{"p", Expr(3)}, {"q", Expr(2)}, {"k", Expr(1)}});
    GridProblem p = grid_problem(sol);
    Grid g = canonical_grid();
    g.s_count = ns;
    g.t_count = nt;
    GridReport a, b;
    double ts = best_of(reps, [&] { a = grid_residual_serial(p, g); });
    double tp = best_of(reps, [&] { b = grid_residual_omp(p, g); });
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("grid %dx%d, %d thread(s)\n", ns, nt, threads);
    std::printf("serial  %.4f s  max_abs %.3e\n", ts, a.max_abs);
    std::printf("openmp  %.4f s  max_abs %.3e\n", tp, b.max_abs);
    std::printf("speedup %.2f\n", ts / tp);
    return a.max_abs == b.max_abs ? 0 : 1;
}

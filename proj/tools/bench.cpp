// Benchmark comparing the OpenMP kernels against their serial references on
// the two hot paths: dense lattice convolution (word counts, trace series)
// and chunked grid reduction (torus quadrature). Results must agree exactly.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "heis/kernels.hpp"
#include "heis/mahler.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace heis;
using namespace heis::kernels;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int128 walk_table(int64_t depth, bool parallel, double* elapsed) {
    std::vector<Term> steps = {{1, 0, 0, 1}, {-1, 0, 0, 1}, {0, 1, 0, 1}, {0, -1, 0, 1}};
    auto boxes = reach_boxes(steps, depth);
    DenseBox cur = boxes[0];
    cur.allocate();
    cur.set(0, 0, 0, 1);
    auto t0 = std::chrono::steady_clock::now();
    for (int64_t s = 1; s <= depth; ++s) {
        DenseBox nxt = boxes[size_t(s)];
        nxt.allocate();
        convolve(cur, nxt, steps, parallel);
        cur = std::move(nxt);
    }
    int128 check = pair_constant_term(cur, cur);
    *elapsed = seconds(t0);
    return check;
}

double quad_value(int64_t n, bool parallel, double* elapsed) {
    auto t0 = std::chrono::steady_clock::now();
    auto fn = [](int64_t idx) {
        double s0 = double(idx & 0xffff) / 65536.0;
        double s1 = double(idx >> 16) / 65536.0;
        return std::log(std::abs(5.0 - 2.0 * std::cos(2 * M_PI * s0) - 2.0 * std::cos(2 * M_PI * s1)));
    };
    double v = grid_sum(n, fn, parallel) / double(n);
    *elapsed = seconds(t0);
    return v;
}

}  // namespace

int main() {
#if defined(_OPENMP)
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not enabled (serial fallback)\n");
#endif

    double ts = 0, tp = 0;
    int128 cs = walk_table(26, false, &ts);
    int128 cp = walk_table(26, true, &tp);
    std::printf("lattice convolution, depth 26:  serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                ts, tp, ts / tp, cs == cp ? "results identical" : "RESULTS DIFFER");

    int64_t n = int64_t(65536) * 1024;
    double qs = quad_value(n, false, &ts);
    double qp = quad_value(n, true, &tp);
    std::printf("grid reduction, %lld points:  serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                (long long)n, ts, tp, ts / tp, qs == qp ? "results identical" : "RESULTS DIFFER");
    return (cs == cp && qs == qp) ? 0 : 1;
}

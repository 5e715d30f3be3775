#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "heis/ints.hpp"
#include "heis/monomial.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace heis::kernels {

// Dense block of 128-bit coefficients over the integer box
// [kmin..kmax] x [lmin..lmax] x [mmin..mmax]; reads outside the box give 0.
// This is the workhorse representation for repeated convolution by a small
// fixed element (trace series, word counts, geometric-series inversion).
struct DenseBox {
    int64_t kmin = 0, kmax = -1, lmin = 0, lmax = -1, mmin = 0, mmax = -1;
    std::vector<int128> a;

    int64_t nk() const { return kmax - kmin + 1; }
    int64_t nl() const { return lmax - lmin + 1; }
    int64_t nm() const { return mmax - mmin + 1; }
    size_t cells() const { return size_t(nk()) * size_t(nl()) * size_t(nm()); }

    void allocate() { a.assign(cells(), 0); }

    bool inside(int64_t k, int64_t l, int64_t m) const {
        return k >= kmin && k <= kmax && l >= lmin && l <= lmax && m >= mmin && m <= mmax;
    }
    size_t index(int64_t k, int64_t l, int64_t m) const {
        return (size_t(k - kmin) * size_t(nl()) + size_t(l - lmin)) * size_t(nm()) +
               size_t(m - mmin);
    }
    int128 at(int64_t k, int64_t l, int64_t m) const {
        return inside(k, l, m) ? a[index(k, l, m)] : 0;
    }
    void set(int64_t k, int64_t l, int64_t m, int128 v) { a[index(k, l, m)] = v; }
};

struct Term {
    int64_t dk, dl, dm;
    int128 c;
};

// out[w] = sum_t in[w * t^{-1}] * t.c  (right multiplication by the element
// with the given terms). Gather form: each output cell is written exactly
// once, so the parallel variant is bit-identical to the serial one.
void convolve_serial(const DenseBox& in, DenseBox& out, const std::vector<Term>& terms);
void convolve_omp(const DenseBox& in, DenseBox& out, const std::vector<Term>& terms);
void convolve(const DenseBox& in, DenseBox& out, const std::vector<Term>& terms, bool parallel);

// sum_v a[v] * b[v^{-1}]; with a = e^s and b = e^t this is the constant term
// of e^{s+t}.
int128 pair_constant_term(const DenseBox& a, const DenseBox& b);

// Reachable-support boxes after 0..t_max right multiplications by `terms`.
// The z-range uses |m_new| <= |m| + |dm| + |l| |dk| per step.
std::vector<DenseBox> reach_boxes(const std::vector<Term>& terms, int64_t t_max);

// Deterministic chunked reduction: partial sums over fixed-size chunks are
// accumulated in chunk order, so the value does not depend on the thread
// count. Kahan within chunks keeps the long flat sums accurate.
double grid_sum_serial(int64_t n, const std::function<double(int64_t)>& f, int64_t chunk = 4096);
double grid_sum_omp(int64_t n, const std::function<double(int64_t)>& f, int64_t chunk = 4096);
double grid_sum(int64_t n, const std::function<double(int64_t)>& f, bool parallel,
                int64_t chunk = 4096);

}  // namespace heis::kernels

#include "heis/kernels.hpp"

namespace heis::kernels {

namespace {

// w * t^{-1} = (k - dk, l - dl, m - dm + dk*(dl - l))
inline void gather_cell(const DenseBox& in, const std::vector<Term>& terms, int64_t k, int64_t l,
                        int64_t m, int128& acc) {
    for (const Term& t : terms) {
        int64_t sk = k - t.dk;
        int64_t sl = l - t.dl;
        int64_t sm = m - t.dm + t.dk * (t.dl - l);
        if (in.inside(sk, sl, sm)) acc = checked_add(acc, checked_mul(in.a[in.index(sk, sl, sm)], t.c));
    }
}

inline void gather_slab(const DenseBox& in, DenseBox& out, const std::vector<Term>& terms,
                        int64_t k) {
    for (int64_t l = out.lmin; l <= out.lmax; ++l) {
        size_t base = (size_t(k - out.kmin) * size_t(out.nl()) + size_t(l - out.lmin)) *
                      size_t(out.nm());
        for (int64_t m = out.mmin; m <= out.mmax; ++m) {
            int128 acc = 0;
            gather_cell(in, terms, k, l, m, acc);
            out.a[base + size_t(m - out.mmin)] = acc;
        }
    }
}

}  // namespace

void convolve_serial(const DenseBox& in, DenseBox& out, const std::vector<Term>& terms) {
    for (int64_t k = out.kmin; k <= out.kmax; ++k) gather_slab(in, out, terms, k);
}

void convolve_omp(const DenseBox& in, DenseBox& out, const std::vector<Term>& terms) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (int64_t k = out.kmin; k <= out.kmax; ++k) gather_slab(in, out, terms, k);
#else
    convolve_serial(in, out, terms);
#endif
}

void convolve(const DenseBox& in, DenseBox& out, const std::vector<Term>& terms, bool parallel) {
    if (parallel)
        convolve_omp(in, out, terms);
    else
        convolve_serial(in, out, terms);
}

int128 pair_constant_term(const DenseBox& a, const DenseBox& b) {
    int128 s = 0;
    for (int64_t k = a.kmin; k <= a.kmax; ++k)
        for (int64_t l = a.lmin; l <= a.lmax; ++l)
            for (int64_t m = a.mmin; m <= a.mmax; ++m) {
                int128 av = a.a[a.index(k, l, m)];
                if (av == 0) continue;
                int128 bv = b.at(-k, -l, l * k - m);
                if (bv == 0) continue;
                s = checked_add(s, checked_mul(av, bv));
            }
    return s;
}

std::vector<DenseBox> reach_boxes(const std::vector<Term>& terms, int64_t t_max) {
    int64_t dk_lo = 0, dk_hi = 0, dl_lo = 0, dl_hi = 0, dk_abs = 0, dm_abs = 0;
    for (const Term& t : terms) {
        dk_lo = std::min(dk_lo, t.dk);
        dk_hi = std::max(dk_hi, t.dk);
        dl_lo = std::min(dl_lo, t.dl);
        dl_hi = std::max(dl_hi, t.dl);
        dk_abs = std::max(dk_abs, std::abs(t.dk));
        dm_abs = std::max(dm_abs, std::abs(t.dm));
    }
    std::vector<DenseBox> boxes(size_t(t_max + 1));
    int64_t mb = 0;
    for (int64_t t = 0; t <= t_max; ++t) {
        DenseBox& b = boxes[size_t(t)];
        b.kmin = dk_lo * t;
        b.kmax = dk_hi * t;
        b.lmin = dl_lo * t;
        b.lmax = dl_hi * t;
        b.mmin = -mb;
        b.mmax = mb;
        int64_t l_abs = std::max(std::abs(dl_lo * t), std::abs(dl_hi * t));
        mb = checked_add64(mb, checked_add64(dm_abs, checked_mul64(l_abs, dk_abs)));
    }
    return boxes;
}

namespace {

double chunk_sum(int64_t lo, int64_t hi, const std::function<double(int64_t)>& f) {
    double s = 0.0, comp = 0.0;
    for (int64_t i = lo; i < hi; ++i) {
        double y = f(i) - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

}  // namespace

double grid_sum_serial(int64_t n, const std::function<double(int64_t)>& f, int64_t chunk) {
    int64_t nch = (n + chunk - 1) / chunk;
    double s = 0.0;
    for (int64_t c = 0; c < nch; ++c)
        s += chunk_sum(c * chunk, std::min(n, (c + 1) * chunk), f);
    return s;
}

double grid_sum_omp(int64_t n, const std::function<double(int64_t)>& f, int64_t chunk) {
#if defined(_OPENMP)
    int64_t nch = (n + chunk - 1) / chunk;
    std::vector<double> parts(size_t(nch), 0.0);
#pragma omp parallel for schedule(static)
    for (int64_t c = 0; c < nch; ++c)
        parts[size_t(c)] = chunk_sum(c * chunk, std::min(n, (c + 1) * chunk), f);
    double s = 0.0;
    for (double p : parts) s += p;
    return s;
#else
    return grid_sum_serial(n, f, chunk);
#endif
}

double grid_sum(int64_t n, const std::function<double(int64_t)>& f, bool parallel, int64_t chunk) {
    return parallel ? grid_sum_omp(n, f, chunk) : grid_sum_serial(n, f, chunk);
}

}  // namespace heis::kernels

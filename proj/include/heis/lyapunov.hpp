#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "heis/entropy.hpp"
#include "heis/group_ring.hpp"
#include "heis/laurent.hpp"

namespace heis::lyap {

using numeric::cplx;

// Matrix family A(xi, zeta) over the rotation xi -> xi zeta for f monic in y
// of degree D: subdiagonal identity block, last row (g_0, ..., g_{D-1})
// evaluated at (xi, zeta), from f = y^D - sum_{j<D} g_j(x,z) y^j.
struct CompanionCocycle {
    int64_t D = 1;
    std::vector<LaurentPoly2> g;  // g[j](x, z), j = 0..D-1
    cplx zeta;

    std::vector<cplx> matrix_at(cplx xi) const;  // row-major D x D
};

// f must be monic in y up to a unit; if it is monic in x instead, the x<->y
// swap (with z -> z^{-1}) is applied first. Entropy is invariant under both.
struct MonicForm {
    CompanionCocycle cocycle;  // zeta left unset
    bool swapped = false;
};
MonicForm monic_form(const GroupRingElement& f);

std::vector<cplx> cocycle_product(const CompanionCocycle& c, cplx xi, int64_t n);

struct LyapunovSpectrum {
    std::vector<double> exponents;       // ascending
    std::vector<int64_t> multiplicities; // clustered at 10x stderr gaps
    int64_t n_steps = 0, n_samples = 0;
    double stderr_est = 0.0;
};

// QR (modified Gram-Schmidt) accumulation of log diagonal entries, averaged
// over seeded xi samples. Identical seeds give identical spectra.
LyapunovSpectrum lyapunov_spectrum(const CompanionCocycle& c, int64_t n_steps, int64_t n_samples,
                                   uint64_t seed);

// Checked irrationality gate: zeta = e^{2 pi i theta} with theta within
// 1/10^6 of a fraction of denominator <= 10^6 is rejected unless overridden.
bool is_near_low_rational(double theta, int64_t max_den = 1000000);

// h = int over zeta of sum_j r_j chi_j(zeta)^+, zeta from a golden-ratio
// low-discrepancy sequence; Monte-Carlo error bars.
entropy::EntropyEstimate entropy_via_lyapunov(const GroupRingElement& f, int64_t zeta_grid,
                                              int64_t n_steps, int64_t n_samples, uint64_t seed,
                                              std::vector<std::vector<double>>* surface = nullptr);

// int log^+ spr A(0, zeta) dzeta; g_j may use only nonnegative powers of x.
double herman_lower_bound(const GroupRingElement& f, int64_t zeta_grid,
                          std::vector<std::vector<double>>* curve = nullptr);

// (1/n) log || prod_{k<n} [[0,1],[1,e^{2 pi i (k a + b)}]] || for random
// (a, b), with periodic renormalization of the running product.
struct RandomProductReport {
    std::vector<double> per_trial;
    double mean = 0.0, mean_abs = 0.0, stddev = 0.0;
    int64_t n = 0, trials = 0;
    uint64_t seed = 0;
};
RandomProductReport random_product_experiment(int64_t n, int64_t trials, uint64_t seed);
// forced pair (a, b) variant (the measure-zero exceptional cases)
double random_product_single(int64_t n, double a, double b);

}  // namespace heis::lyap

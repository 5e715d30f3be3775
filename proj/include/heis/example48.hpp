#pragma once

#include <complex>
#include <vector>

#include "heis/ints.hpp"
#include "heis/laurent.hpp"
#include "heis/report.hpp"

namespace heis::expansive {

// The degree-48 worked analysis for f = y - a(x) c(z), a = x^2 - x - 1,
// c = z^12 + z^2 + 1. The unimodular solutions of |c(zeta)| = 1/tau are the
// roots on the circle of the integer polynomial
//   G(z) = z^24 (A^2 - 3A + 1),  A = c(z) c(1/z),
// built here exactly over Q(sqrt 5) and by its rational closed form.
struct Example48 {
    LaurentPoly1 G;                          // exact integer coefficients, degree 48
    double mahler_G = 0.0;                   // product of the 10 root moduli > 1
    double sqrt_mahler_G = 0.0;              // < tau
    int roots_outside = 0;
    std::vector<std::complex<double>> unit_roots;  // the eight zeta_k
    double diophantine_C = 0.0;              // 2^{-18} / sqrt(40)
    bool diophantine_verified = false;       // |zeta_k^n - 1| >= C M(G)^{-n/2}, n <= n_checked
    int64_t n_checked = 0;
    double min_ratio = 0.0;                  // min over n,k of |zeta^n-1| / (C M^{-n/2})
    double max_inside_product = 0.0;         // max_n prod |1 - lambda_j^{-n}|, lambda outside
    int64_t max_inside_product_at = 0;
    int64_t rational_exclusion_threshold = 0;  // minimal N0, see below
    double graph_min_away = 0.0;             // min |log|c(w)tau|| at distance > 0.01 from roots
    double graph_min_slope_near = 0.0;       // min |d/ds log|c(e^{2 pi i s})tau|| near roots
    Json to_json() const;
};

// The rational-exclusion threshold is the least N0 such that for all n >= N0
//   (1/(2 pi n)) * C * M(G)^{-n/2} > 5 tau^{-n},
// i.e. the per-step diophantine lower bound on |log|c(omega)tau|| (chord to
// arc-length conversion included) beats the variation bound of the
// a(x)-product at every n-th root of unity omega.
Example48 example48_suite(int64_t diophantine_n_max = 500, int64_t graph_grid = 200000);

// log|c(e^{2 pi i s}) tau| sampled on a grid; the analysis' graph data.
std::vector<std::vector<double>> example48_graph_csv(int64_t n);

}  // namespace heis::expansive

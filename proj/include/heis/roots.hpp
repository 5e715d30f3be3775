#pragma once

#include <complex>
#include <vector>

namespace heis::numeric {

using cplx = std::complex<double>;

// Aberth-Ehrlich simultaneous iteration with Newton polish. Coefficients are
// degree-ascending; the leading coefficient must be nonzero. Roots at the
// origin (trailing zero coefficients) are split off exactly.
struct RootResult {
    std::vector<cplx> roots;          // multiset, size = degree
    double max_backward_error = 0.0;  // max |p(r)| / sum |c_i||r|^i
    bool converged = true;
    int iterations = 0;
};

RootResult poly_roots(const std::vector<cplx>& coeffs);

// Largest root modulus; 0 for constants.
double spectral_radius(const std::vector<cplx>& coeffs);

}  // namespace heis::numeric

#pragma once

#include <complex>
#include <vector>

#include "heis/group_ring.hpp"
#include "heis/laurent.hpp"
#include "heis/roots.hpp"

namespace heis::entropy {

using numeric::cplx;

// The q x q matrix of right convolution on the invariant subspace attached
// to a root of unity zeta of order q: row i carries xi^j g_j(eta zeta^i, zeta)
// in column (i + j) mod q, from the decomposition f = sum_j x^j g_j(y, z).
// Order 1 gives the 1 x 1 matrix [f(xi, eta, 1)].
struct TwistedMatrix {
    int64_t q = 1;
    std::vector<cplx> entries;  // row-major q*q
    cplx& at(int64_t i, int64_t j) { return entries[size_t(i * q + j)]; }
    const cplx& at(int64_t i, int64_t j) const { return entries[size_t(i * q + j)]; }
};

// f decomposed as sum_j x^j g_j(y,z) after multiplying by a power of x (a
// unit; |det| is unaffected).
struct XDecomposition {
    int64_t shift = 0;  // power of x removed
    std::vector<LaurentPoly2> g;  // g[j], j = 0..D, in (y, z)
};
XDecomposition x_decompose(const GroupRingElement& f);

TwistedMatrix build_a_matrix(const GroupRingElement& f, int64_t q, cplx zeta, cplx xi, cplx eta);
TwistedMatrix build_a_matrix(const XDecomposition& d, int64_t q, cplx zeta, cplx xi, cplx eta);

// Determinant via partial-pivot LU accumulating log magnitude; phase is the
// determinant's unit direction so value = exp(log_abs) * phase when finite.
struct LogDet {
    double log_abs;  // -inf for a singular matrix
    cplx phase;
    cplx value() const { return std::exp(log_abs) * phase; }
};
LogDet log_det(TwistedMatrix m);

// det of the banded circulant with diagonals (a, b, c):
// prod a_j - tr prod [[-b_j, c_j], [-a_j, 0]] + prod c_j, for q >= 3.
cplx tri_circulant_det(const std::vector<cplx>& a, const std::vector<cplx>& b,
                       const std::vector<cplx>& c);

// Closed form for det A_{zeta,f} when f = g0 + x g1 + x^2 g2: the three-term
// expansion with the transfer-matrix trace in the middle.
cplx quadratic_det(const LaurentPoly2& g0, const LaurentPoly2& g1, const LaurentPoly2& g2,
                   int64_t q, cplx zeta, cplx xi, cplx eta);

// tau^q + sigma^q as an exact integer (the Lucas sequence).
int128 lucas_number(int64_t q);

// Exact |det| of the n x n circulant of a one-variable integer polynomial
// acting on Z[u]/(u^n - 1): the periodic-point count of the corresponding
// commutative action. Fraction-free Bareiss elimination.
int128 circulant_abs_det(const LaurentPoly1& f, int64_t n);

}  // namespace heis::entropy

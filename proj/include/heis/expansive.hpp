#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "heis/group_ring.hpp"
#include "heis/laurent.hpp"
#include "heis/report.hpp"
#include "heis/roots.hpp"

namespace heis::expansive {

using numeric::cplx;

// Dominant monomial if |f_{d0}| > sum of the other |f_d|.
std::optional<Monomial> is_lopsided(const GroupRingElement& f);

// Truncated geometric-series inverse of a lopsided element, exact rationals.
// All coefficients share the denominator f1^{N+1}.
struct L1Approx {
    std::map<Monomial, mpq_class> element;
    double tail_bound = 0.0;    // l1 mass of the discarded tail, rigorous
    mpq_class residual_l1 = 0;  // || f * element - 1 ||_1, exact
    double decay_rate = 0.0;    // certified r = s^{1/tau}
    double decay_const = 0.0;   // C with |(f^{-1})_d| <= C r^{|d|_S}
    int64_t terms_used = 0;     // N
};
L1Approx invert_l1(const GroupRingElement& f, double eps, bool parallel = true);

// Best-effort search for g with f g lopsided: Newton-Schulz refinement of a
// truncated inverse in floating point, then integer rounding, verified
// exactly. Empty result only means the budget ran out.
struct LopsidizeBudget {
    int max_iterations = 40;
    int64_t support_radius = 14;  // per-axis truncation box
    int64_t max_scale = 4096;     // integer scalings tried when rounding
};
std::optional<GroupRingElement> lopsidize(const GroupRingElement& f,
                                          const LopsidizeBudget& budget = {});

struct Witness {
    cplx xi, zeta;
    std::string kind;  // "rational" or "irrational-crossing"
};

struct ExpansivenessVerdict {
    enum class Status { Expansive, Nonexpansive, Undetermined } status;
    std::optional<Witness> witness;
    Json diagnostics;
};

struct LinearCheckOptions {
    int64_t zeta_grid = 1024;
    int64_t xi_grid = 1024;
    double nonvanish_margin = 1e-6;
    double sign_margin = 1e-7;  // |D| below this marks a candidate crossing
    int64_t rational_q_max = 64;
    int refine_rounds = 30;
};

// Geometric criterion for f = h(x,z) y - g(x,z): the decision runs on
// D(zeta) = m(g(.,zeta)) - m(h(.,zeta)). Constant sign with margin is
// expansive; candidate zero regions are probed for rational-zeta witnesses
// (condition (2): some xi with sum_j phi(xi zeta^j) = 0) and, failing that,
// reported as irrational crossings with a bounded-cocycle scan as evidence.
ExpansivenessVerdict check_linear_y_expansive(const LaurentPoly2& h, const LaurentPoly2& g,
                                              const LinearCheckOptions& opts = {});

// psi_zeta(n, xi) = log|c_n| for the recurrence c_{n+1} h(xi zeta^n, zeta) =
// c_n g(xi zeta^n, zeta), over the window |n| <= N.
struct CocycleTrace {
    cplx zeta, xi;
    int64_t window = 0;
    std::vector<double> values;  // psi(-N) .. psi(N)
    double sup_above = 0.0;
    double psi(int64_t n) const { return values[size_t(n + window)]; }
};
CocycleTrace bounded_cocycle_scan(const LaurentPoly2& g, const LaurentPoly2& h, cplx zeta, cplx xi,
                                  int64_t window);

// Finite-dimensional invertibility probe at zeta = e^{2 pi i p / q}: grid
// minimum of |det A_{zeta,f}(xi, eta)| with local refinement. A near-zero
// minimum is a concrete non-invertibility witness.
struct AllanReport {
    double min_abs_det = 0.0;
    cplx argmin_xi, argmin_eta;
    int64_t q = 1;
    Json diagnostics;
};
AllanReport allan_rational_check(const GroupRingElement& f, int64_t p, int64_t q,
                                 int64_t grid_n = 256, int refine_rounds = 40);

}  // namespace heis::expansive

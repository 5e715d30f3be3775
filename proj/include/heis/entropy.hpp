#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "heis/group_ring.hpp"
#include "heis/laurent.hpp"
#include "heis/mahler.hpp"
#include "heis/report.hpp"
#include "heis/twisted.hpp"
#include "heis/words.hpp"

namespace heis::entropy {

struct EntropyEstimate {
    double value = 0.0;  // nats
    enum class Method { TraceSeries, PeriodicDet, LinearFormula, Lyapunov, ClosedForm } method;
    double error_bound = 0.0;
    bool error_is_heuristic = true;  // trace series and closed forms certify theirs
    Json diagnostics;
};

// log f1 - sum_{n<=N} tr(g^n)/n for lopsided f = f1(1 - g), traces taken as
// exact 128-bit constant terms of integer powers; the geometric tail bound
// is included in error_bound and is rigorous.
EntropyEstimate trace_series(const GroupRingElement& f, double tol, bool parallel = true);

// log[(35 + 13 sqrt 13)/18]: the same 4-letter word-count series summed over
// the free group instead.
EntropyEstimate free_group_closed_form();

// Periodic-point determinant sums at prime q: (1/q^2) sum_{zeta^q=1}
// int int log|det A_{zeta,f}| dxi deta, reported per q with a Richardson
// extrapolation in 1/q (diagnostic, not certified).
struct PeriodicResult {
    std::vector<int64_t> q;
    std::vector<double> value;
    double extrapolated = 0.0;
    int64_t near_singular_cells = 0;
    EntropyEstimate estimate;  // value = extrapolated
};
PeriodicResult periodic_determinant(const GroupRingElement& f, const std::vector<int64_t>& qs,
                                    const numeric::QuadratureGrid& grid);

// int max{ m(g(.,zeta)), m(h(.,zeta)) } dzeta for f = g(y,z) + x h(y,z).
EntropyEstimate linear_formula(const LaurentPoly2& g, const LaurentPoly2& h, int64_t zeta_grid,
                               // per-zeta curve rows (angle, m_g, m_h, max), for CSV sidecars
                               std::vector<std::vector<double>>* curve = nullptr);

// Lower bound from each Newton-polygon face: the face polynomial lives in a
// commutative subgroup, so its entropy is a two-variable Mahler measure.
struct FaceBound {
    std::string face;  // "vertex(k,l)" or "edge(k0,l0)-(k1,l1)"
    double value;
};
struct FaceBounds {
    std::vector<FaceBound> faces;
    double best = 0.0;
};
FaceBounds face_entropy_lower_bound(const GroupRingElement& f, const numeric::QuadratureGrid& grid);

// R_n(log|phi|)(zeta) <= m(phi) + D log2 / n, checked numerically.
struct RiemannSumReport {
    double riemann_sum;  // may be -inf if a sample hits a root
    double mahler;
    double bound;
    bool holds;
};
RiemannSumReport riemann_sum_inequality(const std::vector<numeric::cplx>& phi, int64_t n,
                                        numeric::cplx zeta);

// Boyd-Smyth classification heuristic for two commuting variables.
enum class ZeroEntropyStatus { ZeroCandidate, Positive, Undetermined };
struct ZeroEntropyReport {
    ZeroEntropyStatus status;
    double mahler = 0.0;
    std::vector<GenCycloHit> factors;  // found generalized cyclotomic factors
};
ZeroEntropyReport zero_entropy_heuristic(const LaurentPoly2& f, const numeric::QuadratureGrid& grid,
                                         double margin = 1e-3, int64_t k_max = 24,
                                         int64_t n_max = 6);

// Conjectural quadratic-case value: int max{m(g0(.,zeta)), b_f(zeta),
// m(g2(.,zeta))} dzeta with b_f = log tau + m(g1(.,zeta)) when the
// transfer-matrix condition g1(y,z) g1(yz,z) = -g2(y,z) g0(yz,z) holds.
struct QuadraticExperiment {
    bool simple_det_condition = false;
    double conjectured = 0.0;
    double periodic = 0.0;
};
QuadraticExperiment quadratic_entropy_experiment(const LaurentPoly2& g0, const LaurentPoly2& g1,
                                                 const LaurentPoly2& g2,
                                                 const std::vector<int64_t>& qs,
                                                 const numeric::QuadratureGrid& grid);

}  // namespace heis::entropy

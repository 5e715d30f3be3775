#pragma once

#include <map>

#include "heis/expansive.hpp"
#include "heis/group_ring.hpp"

namespace heis::homoclinic {

// Truncation of the fundamental homoclinic point t = (f*)^{-1} mod 1.
// `raw` keeps the exact rational coefficients of the approximate inverse,
// `values` their reductions mod 1.
struct HomoclinicWindow {
    std::map<Monomial, double> values;      // in [0,1)
    std::map<Monomial, mpq_class> raw;
    double tail_bound = 0.0;                // l1 mass outside the window
    expansive::L1Approx inverse;            // the underlying certificate
};

// Only constructively invertible (lopsided) f are accepted; route other
// expansive f through lopsidize first.
HomoclinicWindow fundamental_homoclinic(const GroupRingElement& f, double eps);

struct DecayCertificate {
    double C = 0.0, r = 0.0;
    double max_violation = 0.0;  // excess of any |coefficient| over C r^{|d|_S}
};
DecayCertificate decay_certificate(const HomoclinicWindow& w, const GroupRingElement& f);

// Coordinates of pi(u) = (u . w) mod 1 on the window, for a finitely
// supported integer configuration u; error <= tail_bound * ||u||_1.
std::map<Monomial, double> symbolic_cover_sample(const GroupRingElement& u,
                                                 const HomoclinicWindow& w);

// Experiment data for the (z-1)^2 multiplier smoothing of 2 - x - y: the
// l1 masses ||(z-1)^2 [n k]_z||_1 summed over k and scaled by 2^{-(n+1)},
// per n. Decay of these masses is the summability evidence; the full
// analysis is out of scope here.
std::vector<double> multiplier_experiment(int64_t n_max);

}  // namespace heis::homoclinic

#include "heis/homoclinic.hpp"

#include <cmath>

#include "heis/word_norm.hpp"

namespace heis::homoclinic {

namespace {

double frac01(const mpq_class& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    mpq_class f = q - mpq_class(fl);
    double d = f.get_d();
    if (d >= 1.0) d = 0.0;
    return d;
}

}  // namespace

HomoclinicWindow fundamental_homoclinic(const GroupRingElement& f, double eps) {
    if (!expansive::is_lopsided(f))
        throw std::invalid_argument(
            "fundamental_homoclinic: f must be lopsided (route through lopsidize first)");
    HomoclinicWindow w;
    w.inverse = expansive::invert_l1(star(f), eps);
    w.raw = w.inverse.element;
    w.tail_bound = w.inverse.tail_bound;
    for (auto& [m, q] : w.raw) w.values[m] = frac01(q);
    return w;
}

DecayCertificate decay_certificate(const HomoclinicWindow& w, const GroupRingElement& f) {
    (void)f;
    DecayCertificate cert;
    cert.C = w.inverse.decay_const;
    cert.r = w.inverse.decay_rate;
    for (auto& [m, q] : w.raw) {
        double mag = std::abs(q.get_d());
        double bound = cert.r == 0.0 ? (m.is_identity() ? cert.C : 0.0)
                                     : cert.C * std::pow(cert.r, double(word_norm(m)));
        cert.max_violation = std::max(cert.max_violation, mag - bound);
    }
    if (cert.max_violation < 0) cert.max_violation = 0;
    return cert;
}

std::map<Monomial, double> symbolic_cover_sample(const GroupRingElement& u,
                                                 const HomoclinicWindow& w) {
    std::map<Monomial, double> out;
    for (auto& [gamma, unused] : w.raw) {
        mpq_class acc = 0;
        for (auto& [delta, ud] : u.terms()) {
            auto it = w.raw.find(mul(inverse(delta), gamma));
            if (it == w.raw.end()) continue;
            acc += mpq_class(to_string(ud)) * it->second;
        }
        out[gamma] = frac01(acc);
    }
    return out;
}

std::vector<double> multiplier_experiment(int64_t n_max) {
    // (z-1)^2-smoothed mass of the 2 - x - y geometric series: the n-th term
    // contributes sum_k ||(z-1)^2 [n k]_z||_1 / 2^{n+1}
    std::vector<int128> sq = {1, -2, 1};
    LaurentPoly1 smooth(0, std::move(sq));
    std::vector<double> masses;
    for (int64_t n = 1; n <= n_max; ++n) {
        auto qb = q_binomial_expand(n);
        long double mass = 0.0L;
        for (auto& p : qb) {
            LaurentPoly1 sp = mul(smooth, p);
            long double l1 = 0.0L;
            for (auto& c : sp.coeffs()) l1 += fabsl((long double)to_double(c));
            mass += l1;
        }
        masses.push_back(double(mass / powl(2.0L, (long double)(n + 1))));
    }
    return masses;
}

}  // namespace heis::homoclinic

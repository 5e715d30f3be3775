#include "heis/example48.hpp"

#include <cmath>

#include "heis/roots.hpp"
#include "heis/sqrt5.hpp"

namespace heis::expansive {

using numeric::cplx;

namespace {

LaurentPoly1 c_poly() {
    std::vector<int128> c(13, 0);
    c[0] = 1;
    c[2] = 1;
    c[12] = 1;
    return LaurentPoly1(0, std::move(c));
}

cplx eval(const LaurentPoly1& p, cplx z) { return p.eval(z); }

cplx deriv_eval(const LaurentPoly1& p, cplx z) {
    cplx acc = 0.0;
    for (int64_t e = p.low_exp(); e <= p.high_exp(); ++e) {
        if (e == 0) continue;
        acc += double(e) * to_double(p.coeff(e)) * std::pow(z, double(e - 1));
    }
    return acc;
}

}  // namespace

Example48 example48_suite(int64_t diophantine_n_max, int64_t graph_grid) {
    Example48 ex;
    const double tau = (1.0 + std::sqrt(5.0)) / 2.0;

    LaurentPoly1 c = c_poly();
    // A = c(z) c(1/z); G = z^24 (A^2 - 3 A + 1)
    std::vector<int128> rev(c.coeffs().rbegin(), c.coeffs().rend());
    LaurentPoly1 crev(-12, std::move(rev));
    LaurentPoly1 A = mul(c, crev);
    LaurentPoly1 G = add(sub(mul(A, A), mul(LaurentPoly1(3), A)), LaurentPoly1(1));
    G = mul(G, LaurentPoly1::monomial(24));
    ex.G = G;

    // cross-check: G = F(z) Fbar(z) with F = z^12 (c(z) c(1/z) - tau^{-2})
    {
        using numeric::PolyQ5;
        using numeric::Sqrt5;
        LaurentPoly1 zA = mul(A, LaurentPoly1::monomial(12));  // integer, degree 24
        PolyQ5 F(25);
        for (int64_t e = 0; e <= 24; ++e)
            F[size_t(e)] = Sqrt5(mpq_class(to_string(zA.coeff(e))), 0);
        Sqrt5 tau_m2 = Sqrt5::tau().inverse() * Sqrt5::tau().inverse();
        F[12] = F[12] - tau_m2;
        PolyQ5 Gq = numeric::poly_mul(F, numeric::poly_conj(F));
        bool ok = Gq.size() == 49;
        for (size_t i = 0; ok && i < Gq.size(); ++i)
            ok = Gq[i].is_rational() && Gq[i].a == mpq_class(to_string(G.coeff(int64_t(i))));
        if (!ok) throw std::logic_error("example48: Galois product disagrees with closed form");
    }

    std::vector<cplx> coeffs;
    for (int64_t e = 0; e <= 48; ++e) coeffs.push_back(cplx(to_double(G.coeff(e)), 0.0));
    auto rr = numeric::poly_roots(coeffs);

    std::vector<cplx> outside;
    double logM = 0.0;
    for (auto& z : rr.roots) {
        double az = std::abs(z);
        if (az > 1.0 + 1e-7) {
            outside.push_back(z);
            logM += std::log(az);
        } else if (std::abs(az - 1.0) <= 1e-7) {
            // the zeta_k satisfy |c(zeta)| = 1/tau; the other unimodular
            // roots of G satisfy |c(zeta)| = tau
            cplx zn = z / az;
            if (std::abs(std::abs(eval(c, zn)) - 1.0 / tau) < 1e-3) ex.unit_roots.push_back(zn);
        }
    }
    ex.roots_outside = int(outside.size());
    ex.mahler_G = std::exp(logM);
    ex.sqrt_mahler_G = std::exp(0.5 * logM);

    ex.diophantine_C = 1.0 / (std::pow(2.0, 18.0) * std::sqrt(40.0));
    ex.n_checked = diophantine_n_max;
    ex.min_ratio = std::numeric_limits<double>::infinity();
    for (auto& zk : ex.unit_roots) {
        cplx zn = 1.0;
        for (int64_t n = 1; n <= diophantine_n_max; ++n) {
            zn *= zk;
            zn /= std::abs(zn);
            double lhs = std::abs(zn - 1.0);
            double rhs = ex.diophantine_C * std::exp(-0.5 * double(n) * logM);
            ex.min_ratio = std::min(ex.min_ratio, lhs / rhs);
        }
    }
    ex.diophantine_verified = ex.unit_roots.size() == 8 && ex.min_ratio >= 1.0;

    // max over n of prod |1 - lambda_j^{-n}| over the roots outside
    {
        double best = 0.0;
        int64_t best_n = 0;
        std::vector<cplx> inv;
        for (auto& z : outside) inv.push_back(1.0 / z);
        std::vector<cplx> pw(inv.size(), cplx(1.0));
        for (int64_t n = 1; n <= 2000; ++n) {
            double prod = 1.0;
            for (size_t j = 0; j < inv.size(); ++j) {
                pw[j] *= inv[j];
                prod *= std::abs(1.0 - pw[j]);
            }
            if (prod > best) {
                best = prod;
                best_n = n;
            }
        }
        ex.max_inside_product = best;
        ex.max_inside_product_at = best_n;
    }

    // least N0 with (1/(2 pi n)) C M^{-n/2} > 5 tau^{-n} for all n >= N0;
    // compared in log form, where the margin n log(tau/sqrt M) - log n grows
    // monotonically past n = 7
    {
        int64_t last_fail = 0;
        double target = std::log(5.0 * 2.0 * M_PI / ex.diophantine_C);
        double rate = std::log(tau) - 0.5 * logM;
        for (int64_t n = 1; n <= 100000; ++n)
            if (!(double(n) * rate - std::log(double(n)) > target)) last_fail = n;
        ex.rational_exclusion_threshold = last_fail + 1;
    }

    // graph checks for log|c(e^{2 pi i s}) tau|
    {
        double eps0 = 0.01;
        double min_away = std::numeric_limits<double>::infinity();
        double min_slope = std::numeric_limits<double>::infinity();
        for (int64_t i = 0; i < graph_grid; ++i) {
            double s = double(i) / double(graph_grid);
            cplx w = cplx(std::cos(2 * M_PI * s), std::sin(2 * M_PI * s));
            double dist = std::numeric_limits<double>::infinity();
            for (auto& zk : ex.unit_roots) dist = std::min(dist, std::abs(w - zk));
            double lam = std::log(std::abs(eval(c, w)) * tau);
            if (dist > eps0) {
                min_away = std::min(min_away, std::abs(lam));
            } else {
                // d/ds log|c(e^{2 pi i s})| = Re[2 pi i w c'(w)/c(w)]
                cplx ratio = deriv_eval(c, w) * w / eval(c, w);
                double slope = std::abs(2.0 * M_PI * std::real(cplx(0, 1) * ratio));
                min_slope = std::min(min_slope, slope);
            }
        }
        ex.graph_min_away = min_away;
        ex.graph_min_slope_near = min_slope;
    }
    return ex;
}

std::vector<std::vector<double>> example48_graph_csv(int64_t n) {
    LaurentPoly1 c = c_poly();
    const double tau = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<std::vector<double>> rows;
    rows.reserve(size_t(n));
    for (int64_t i = 0; i < n; ++i) {
        double s = double(i) / double(n);
        cplx w = cplx(std::cos(2 * M_PI * s), std::sin(2 * M_PI * s));
        rows.push_back({s, std::log(std::abs(c.eval(w)) * tau)});
    }
    return rows;
}

Json Example48::to_json() const {
    Json j;
    std::vector<std::string> gc;
    for (int64_t e = 0; e <= G.high_exp(); ++e) gc.push_back(to_string(G.coeff(e)));
    j["G_coefficients"] = gc;
    j["mahler_G"] = mahler_G;
    j["sqrt_mahler_G"] = sqrt_mahler_G;
    j["roots_outside"] = roots_outside;
    std::vector<double> ur;
    for (auto& z : unit_roots) {
        ur.push_back(z.real());
        ur.push_back(z.imag());
    }
    j["unit_roots_re_im"] = ur;
    j["diophantine_C"] = diophantine_C;
    j["diophantine_verified"] = diophantine_verified;
    j["diophantine_n_checked"] = n_checked;
    j["diophantine_min_ratio"] = min_ratio;
    j["max_inside_product"] = max_inside_product;
    j["max_inside_product_at"] = max_inside_product_at;
    j["rational_exclusion_threshold"] = rational_exclusion_threshold;
    j["graph_min_away"] = graph_min_away;
    j["graph_min_slope_near"] = graph_min_slope_near;
    return j;
}

}  // namespace heis::expansive

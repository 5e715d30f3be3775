#include "heis/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "heis/rng.hpp"
#include "heis/roots.hpp"

namespace heis::lyap {

using numeric::unit;

namespace {

// f = sum_l c_l(x,z) y^l with the (x,z) part on the left of y^l
std::map<int64_t, LaurentPoly2> y_decompose(const GroupRingElement& f) {
    std::map<int64_t, LaurentPoly2> out;
    for (auto& [m, c] : f.terms()) out[m.l].add_term(m.k, m.m, c);
    return out;
}

}  // namespace

MonicForm monic_form(const GroupRingElement& f) {
    if (f.is_zero()) throw std::invalid_argument("monic_form: zero element");
    for (int attempt = 0; attempt < 2; ++attempt) {
        GroupRingElement cand = attempt == 0 ? f : apply(swap_xy(), f);
        // lift negative y powers by a left unit
        int64_t lmin = cand.terms().begin()->first.l;
        for (auto& [m, c] : cand.terms()) lmin = std::min(lmin, m.l);
        if (lmin != 0) cand = mul(GroupRingElement(Monomial{0, -lmin, 0}, 1), cand);
        auto rows = y_decompose(cand);
        int64_t D = rows.rbegin()->first;
        if (D < 1) continue;
        const LaurentPoly2& top = rows.rbegin()->second;
        if (!top.is_unit_monomial()) continue;
        // normalize the top coefficient to exactly 1 by a left unit
        auto [ij, c] = *top.terms().begin();
        if (!(ij.first == 0 && ij.second == 0 && c == 1)) {
            int sign = c < 0 ? -1 : 1;
            GroupRingElement u(inverse(Monomial{ij.first, 0, ij.second}), sign);
            cand = mul(u, cand);
            rows = y_decompose(cand);
        }
        MonicForm mf;
        mf.swapped = attempt == 1;
        mf.cocycle.D = D;
        mf.cocycle.g.assign(size_t(D), LaurentPoly2());
        for (auto& [l, poly] : rows) {
            if (l == D) continue;
            mf.cocycle.g[size_t(l)] = neg(poly);
        }
        return mf;
    }
    throw std::invalid_argument("monic_form: not monic in y, even after the x<->y swap");
}

std::vector<cplx> CompanionCocycle::matrix_at(cplx xi) const {
    std::vector<cplx> m(size_t(D * D), cplx(0.0));
    for (int64_t i = 0; i + 1 < D; ++i) m[size_t(i * D + i + 1)] = 1.0;
    for (int64_t j = 0; j < D; ++j) m[size_t((D - 1) * D + j)] = g[size_t(j)].eval(xi, zeta);
    return m;
}

namespace {

std::vector<cplx> mat_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, int64_t D) {
    std::vector<cplx> r(size_t(D * D), cplx(0.0));
    for (int64_t i = 0; i < D; ++i)
        for (int64_t k = 0; k < D; ++k) {
            cplx aik = a[size_t(i * D + k)];
            if (aik == cplx(0.0)) continue;
            for (int64_t j = 0; j < D; ++j) r[size_t(i * D + j)] += aik * b[size_t(k * D + j)];
        }
    return r;
}

}  // namespace

std::vector<cplx> cocycle_product(const CompanionCocycle& c, cplx xi, int64_t n) {
    if (n < 1) throw std::invalid_argument("cocycle_product: n >= 1");
    std::vector<cplx> m = c.matrix_at(xi);
    cplx at = xi;
    for (int64_t t = 1; t < n; ++t) {
        at *= c.zeta;
        at /= std::abs(at);
        m = mat_mul(c.matrix_at(at), m, c.D);
    }
    return m;
}

LyapunovSpectrum lyapunov_spectrum(const CompanionCocycle& c, int64_t n_steps, int64_t n_samples,
                                   uint64_t seed) {
    int64_t D = c.D;
    std::vector<std::vector<double>> per_sample((size_t)n_samples);
    for (int64_t samp = 0; samp < n_samples; ++samp) {
        SplitMix64 rng = SplitMix64::stream(seed, uint64_t(samp));
        cplx xi = unit(rng.uniform01());
        // columns of Q, modified Gram-Schmidt each step
        std::vector<std::vector<cplx>> q(size_t(D), std::vector<cplx>(size_t(D), cplx(0.0)));
        for (int64_t j = 0; j < D; ++j) q[size_t(j)][size_t(j)] = 1.0;
        std::vector<double> logs(size_t(D), 0.0);
        cplx at = xi;
        for (int64_t t = 0; t < n_steps; ++t) {
            std::vector<cplx> A = c.matrix_at(at);
            std::vector<std::vector<cplx>> v(size_t(D), std::vector<cplx>(size_t(D), cplx(0.0)));
            for (int64_t j = 0; j < D; ++j)
                for (int64_t i = 0; i < D; ++i) {
                    cplx acc = 0.0;
                    for (int64_t k = 0; k < D; ++k) acc += A[size_t(i * D + k)] * q[size_t(j)][size_t(k)];
                    v[size_t(j)][size_t(i)] = acc;
                }
            for (int64_t j = 0; j < D; ++j) {
                for (int64_t p = 0; p < j; ++p) {
                    cplx proj = 0.0;
                    for (int64_t i = 0; i < D; ++i)
                        proj += std::conj(v[size_t(p)][size_t(i)]) * v[size_t(j)][size_t(i)];
                    for (int64_t i = 0; i < D; ++i) v[size_t(j)][size_t(i)] -= proj * v[size_t(p)][size_t(i)];
                }
                double nrm = 0.0;
                for (int64_t i = 0; i < D; ++i) nrm += std::norm(v[size_t(j)][size_t(i)]);
                nrm = std::sqrt(nrm);
                if (nrm < 1e-300) nrm = 1e-300;
                logs[size_t(j)] += std::log(nrm);
                for (int64_t i = 0; i < D; ++i) v[size_t(j)][size_t(i)] /= nrm;
            }
            q = std::move(v);
            at *= c.zeta;
            at /= std::abs(at);
        }
        for (auto& l : logs) l /= double(n_steps);
        per_sample[size_t(samp)] = logs;
    }

    LyapunovSpectrum spec;
    spec.n_steps = n_steps;
    spec.n_samples = n_samples;
    std::vector<double> mean(size_t(D), 0.0), var(size_t(D), 0.0);
    for (auto& s : per_sample)
        for (int64_t j = 0; j < D; ++j) mean[size_t(j)] += s[size_t(j)];
    for (auto& m : mean) m /= double(n_samples);
    for (auto& s : per_sample)
        for (int64_t j = 0; j < D; ++j) {
            double d = s[size_t(j)] - mean[size_t(j)];
            var[size_t(j)] += d * d;
        }
    double se = 0.0;
    for (int64_t j = 0; j < D; ++j) {
        double v = n_samples > 1 ? var[size_t(j)] / double(n_samples - 1) : 0.0;
        se = std::max(se, std::sqrt(v / double(n_samples)));
    }
    spec.stderr_est = se;
    std::sort(mean.begin(), mean.end());
    // cluster by gaps of 10x stderr
    double gap = std::max(10.0 * se, 1e-12);
    for (size_t j = 0; j < mean.size(); ++j) {
        if (!spec.exponents.empty() && mean[j] - spec.exponents.back() < gap) {
            double w = double(spec.multiplicities.back());
            spec.exponents.back() = (spec.exponents.back() * w + mean[j]) / (w + 1.0);
            spec.multiplicities.back() += 1;
        } else {
            spec.exponents.push_back(mean[j]);
            spec.multiplicities.push_back(1);
        }
    }
    return spec;
}

bool is_near_low_rational(double theta, int64_t max_den) {
    // continued-fraction convergents of theta; the admissible distance
    // shrinks with the denominator, since every irrational has q^{-2}-close
    // convergents eventually
    double x = theta - std::floor(theta);
    int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double y = x;
    for (int it = 0; it < 64; ++it) {
        if (q0 > max_den) break;
        int64_t a = (int64_t)std::floor(y);
        int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > 0 && q2 <= max_den &&
            std::abs(x - double(p2) / double(q2)) < 1e-9 / double(q2))
            return true;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = y - std::floor(y);
        if (frac < 1e-12) break;
        y = 1.0 / frac;
    }
    return false;
}

entropy::EntropyEstimate entropy_via_lyapunov(const GroupRingElement& f, int64_t zeta_grid,
                                              int64_t n_steps, int64_t n_samples, uint64_t seed,
                                              std::vector<std::vector<double>>* surface) {
    MonicForm mf = monic_form(f);
    const double golden = 0.6180339887498949;
    std::vector<double> contrib(size_t(zeta_grid), 0.0);
    double se_acc = 0.0;
    for (int64_t i = 0; i < zeta_grid; ++i) {
        double theta = std::fmod(0.5 / double(zeta_grid) + golden * double(i + 1), 1.0);
        int guard = 0;
        while (is_near_low_rational(theta) && guard++ < 50)
            theta = std::fmod(theta + golden * 1e-3, 1.0);
        CompanionCocycle c = mf.cocycle;
        c.zeta = unit(theta);
        LyapunovSpectrum spec = lyapunov_spectrum(c, n_steps, n_samples,
                                                  SplitMix64::mix(seed + uint64_t(i) * 1315423911ULL));
        double v = 0.0;
        for (size_t j = 0; j < spec.exponents.size(); ++j)
            v += double(spec.multiplicities[j]) * std::max(spec.exponents[j], 0.0);
        contrib[size_t(i)] = v;
        se_acc += spec.stderr_est;
    }
    double mean = 0.0;
    for (double v : contrib) mean += v;
    mean /= double(zeta_grid);
    double var = 0.0;
    for (double v : contrib) var += (v - mean) * (v - mean);
    double se_zeta = zeta_grid > 1 ? std::sqrt(var / double(zeta_grid - 1) / double(zeta_grid)) : 0.1;

    if (surface) {
        // local growth surface (1/n) log ||A_n(xi, zeta)||
        int64_t gs = 64, n_loc = 2048;
        for (int64_t zi = 0; zi < gs; ++zi)
            for (int64_t xi_i = 0; xi_i < gs; ++xi_i) {
                CompanionCocycle c = mf.cocycle;
                c.zeta = unit(double(zi) / double(gs));
                cplx at = unit(double(xi_i) / double(gs));
                std::vector<cplx> m(size_t(c.D * c.D), cplx(0.0));
                for (int64_t j = 0; j < c.D; ++j) m[size_t(j * c.D + j)] = 1.0;
                double acc = 0.0;
                cplx x = at;
                for (int64_t t = 0; t < n_loc; ++t) {
                    m = mat_mul(c.matrix_at(x), m, c.D);
                    double nrm = 0.0;
                    for (auto& e : m) nrm += std::norm(e);
                    nrm = std::sqrt(nrm);
                    acc += std::log(nrm);
                    for (auto& e : m) e /= nrm;
                    x *= c.zeta;
                    x /= std::abs(x);
                }
                surface->push_back({double(xi_i) / double(gs), double(zi) / double(gs),
                                    acc / double(n_loc)});
            }
    }

    entropy::EntropyEstimate est;
    est.method = entropy::EntropyEstimate::Method::Lyapunov;
    est.value = mean;
    est.error_bound = 3.0 * (se_zeta + se_acc / double(zeta_grid));
    est.diagnostics["zeta_grid"] = zeta_grid;
    est.diagnostics["n_steps"] = n_steps;
    est.diagnostics["n_samples"] = n_samples;
    est.diagnostics["seed"] = seed;
    est.diagnostics["swapped"] = mf.swapped;
    return est;
}

double herman_lower_bound(const GroupRingElement& f, int64_t zeta_grid,
                          std::vector<std::vector<double>>* curve) {
    MonicForm mf = monic_form(f);
    for (auto& g : mf.cocycle.g)
        for (auto& [ij, c] : g.terms())
            if (ij.first < 0)
                throw std::invalid_argument("herman_lower_bound: negative x powers not allowed");
    int64_t D = mf.cocycle.D;
    double acc = 0.0;
    for (int64_t i = 0; i < zeta_grid; ++i) {
        cplx zeta = unit(double(i) / double(zeta_grid));
        // A(0,zeta) is the companion matrix of u^D - sum g_j(0,zeta) u^j
        std::vector<cplx> ch(size_t(D + 1), cplx(0.0));
        ch[size_t(D)] = 1.0;
        for (int64_t j = 0; j < D; ++j) {
            cplx v = 0.0;
            for (auto& [ij, c] : mf.cocycle.g[size_t(j)].terms())
                if (ij.first == 0) v += to_double(c) * std::pow(zeta, double(ij.second));
            ch[size_t(j)] = -v;
        }
        double spr = numeric::spectral_radius(ch);
        double lp = spr > 1.0 ? std::log(spr) : 0.0;
        acc += lp;
        if (curve) curve->push_back({double(i) / double(zeta_grid), spr, lp});
    }
    return acc / double(zeta_grid);
}

double random_product_single(int64_t n, double a, double b) {
    cplx m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    double acc = 0.0;
    double u = b;
    for (int64_t k = 0; k < n; ++k) {
        cplx e = unit(u);
        u += a;
        if (u >= 1.0) u -= 1.0;
        // [[0,1],[1,e]] * M
        cplx t00 = m10, t01 = m11;
        cplx t10 = m00 + e * m10, t11 = m01 + e * m11;
        m00 = t00;
        m01 = t01;
        m10 = t10;
        m11 = t11;
        if ((k & 31) == 31) {
            double nrm = std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
            acc += std::log(nrm);
            m00 /= nrm;
            m01 /= nrm;
            m10 /= nrm;
            m11 /= nrm;
        }
    }
    double nrm = std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
    return (acc + std::log(nrm)) / double(n);
}

RandomProductReport random_product_experiment(int64_t n, int64_t trials, uint64_t seed) {
    if (n < 1000) throw std::invalid_argument("random_product_experiment: n >= 1000");
    RandomProductReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.seed = seed;
    for (int64_t i = 0; i < trials; ++i) {
        SplitMix64 rng = SplitMix64::stream(seed, uint64_t(i));
        double a = rng.uniform01(), b = rng.uniform01();
        rep.per_trial.push_back(random_product_single(n, a, b));
    }
    for (double v : rep.per_trial) {
        rep.mean += v;
        rep.mean_abs += std::abs(v);
    }
    rep.mean /= double(trials);
    rep.mean_abs /= double(trials);
    double var = 0.0;
    for (double v : rep.per_trial) var += (v - rep.mean) * (v - rep.mean);
    rep.stddev = trials > 1 ? std::sqrt(var / double(trials - 1)) : 0.0;
    return rep;
}

}  // namespace heis::lyap

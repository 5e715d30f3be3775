#include "heis/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis::numeric {

namespace {

cplx horner(const std::vector<cplx>& c, cplx z, cplx* deriv = nullptr) {
    cplx p = 0.0, d = 0.0;
    for (size_t i = c.size(); i-- > 0;) {
        d = d * z + p;
        p = p * z + c[i];
    }
    if (deriv) *deriv = d;
    return p;
}

double coeff_scale(const std::vector<cplx>& c, double absz) {
    double s = 0.0, zp = 1.0;
    for (auto& ci : c) {
        s += std::abs(ci) * zp;
        zp *= absz;
    }
    return s;
}

}  // namespace

RootResult poly_roots(const std::vector<cplx>& coeffs) {
    RootResult res;
    std::vector<cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.empty()) throw std::invalid_argument("poly_roots: zero polynomial");
    size_t low = 0;
    while (low < c.size() - 1 && std::abs(c[low]) == 0.0) ++low;
    for (size_t i = 0; i < low; ++i) res.roots.push_back(0.0);
    if (low > 0) c.erase(c.begin(), c.begin() + long(low));
    size_t d = c.size() - 1;
    if (d == 0) return res;
    if (d == 1) {
        res.roots.push_back(-c[0] / c[1]);
        return res;
    }

    // start on a circle of radius given by the geometric mean of |c0/cn|,
    // slightly de-symmetrized
    double r0 = std::pow(std::max(std::abs(c[0] / c.back()), 1e-30), 1.0 / double(d));
    r0 = std::clamp(r0, 1e-6, 1e6);
    std::vector<cplx> z(d);
    for (size_t k = 0; k < d; ++k) {
        double ang = 2.0 * M_PI * (double(k) / double(d)) + 0.39996323;
        z[k] = r0 * cplx(std::cos(ang), std::sin(ang));
    }

    const int max_iter = 600;
    int it = 0;
    for (; it < max_iter; ++it) {
        double move = 0.0;
        for (size_t k = 0; k < d; ++k) {
            cplx dp;
            cplx p = horner(c, z[k], &dp);
            if (p == cplx(0.0)) continue;
            if (dp == cplx(0.0)) {
                z[k] += cplx(1e-8, 1e-8);
                continue;
            }
            cplx nk = p / dp;
            cplx s = 0.0;
            for (size_t j = 0; j < d; ++j) {
                if (j == k) continue;
                cplx diff = z[k] - z[j];
                if (std::abs(diff) < 1e-300) diff = cplx(1e-300, 0);
                s += 1.0 / diff;
            }
            cplx den = 1.0 - nk * s;
            cplx w = std::abs(den) < 1e-300 ? nk : nk / den;
            z[k] -= w;
            move = std::max(move, std::abs(w) / (1.0 + std::abs(z[k])));
        }
        if (move < 1e-15) break;
    }
    // a couple of Newton polish steps sharpen the simple roots
    for (int polish = 0; polish < 3; ++polish) {
        for (size_t k = 0; k < d; ++k) {
            cplx dp;
            cplx p = horner(c, z[k], &dp);
            if (std::abs(dp) > 1e-300) {
                cplx step = p / dp;
                if (std::abs(step) < 0.5 * (1.0 + std::abs(z[k]))) z[k] -= step;
            }
        }
    }

    res.iterations = it;
    res.converged = it < max_iter;
    for (size_t k = 0; k < d; ++k) {
        double scale = coeff_scale(c, std::abs(z[k]));
        double be = std::abs(horner(c, z[k])) / std::max(scale, 1e-300);
        res.max_backward_error = std::max(res.max_backward_error, be);
    }
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return std::arg(a) < std::arg(b);
    });
    res.roots.insert(res.roots.end(), z.begin(), z.end());
    return res;
}

double spectral_radius(const std::vector<cplx>& coeffs) {
    auto r = poly_roots(coeffs);
    double s = 0.0;
    for (auto& z : r.roots) s = std::max(s, std::abs(z));
    return s;
}

}  // namespace heis::numeric

#include "heis/mahler.hpp"

#include <cmath>
#include <stdexcept>

#include "heis/kernels.hpp"

namespace heis::numeric {

MahlerValue mahler1(const std::vector<cplx>& coeffs) {
    std::vector<cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.empty()) throw std::invalid_argument("mahler1: zero polynomial");
    MahlerValue mv;
    mv.method = MahlerValue::Method::ExactRoots;
    if (c.size() == 1) {
        mv.log_value = std::log(std::abs(c[0]));
        return mv;
    }
    RootResult rr = poly_roots(c);
    double m = std::log(std::abs(c.back()));
    double err = 1e-13 * double(c.size());
    for (auto& z : rr.roots) {
        double az = std::abs(z);
        if (az > 1.0) m += std::log(az);
        if (std::abs(az - 1.0) < 1e-6) mv.flagged_slices = 1;
        // a cluster straddling the circle can misattribute log^+ terms by
        // about its distance to the circle
        if (std::abs(az - 1.0) < 1e-4) err += std::abs(az - 1.0) + 1e-14;
    }
    err += double(c.size()) * rr.max_backward_error * 10.0;
    if (!rr.converged) err = std::max(err, 1e-3);
    mv.log_value = m;
    mv.error_bound = err;
    return mv;
}

MahlerValue mahler1(const LaurentPoly1& f) {
    if (f.is_zero()) throw std::invalid_argument("mahler1: zero polynomial");
    std::vector<cplx> c;
    c.reserve(f.coeffs().size());
    for (auto& v : f.coeffs()) c.push_back(cplx(to_double(v), 0.0));
    return mahler1(c);
}

QuadResult torus_quad(const std::function<double(const double*)>& fn, const QuadratureGrid& grid) {
    if (grid.n < 4) throw std::invalid_argument("torus_quad: n >= 4 required");
    if (grid.dims < 1 || grid.dims > 3) throw std::invalid_argument("torus_quad: dims in 1..3");
    int64_t n = grid.n;
    int d = grid.dims;
    int64_t total = 1;
    for (int i = 0; i < d; ++i) total *= n;

    auto point_value = [&](int64_t idx) {
        double s[3] = {0, 0, 0};
        int64_t rem = idx;
        for (int i = 0; i < d; ++i) {
            s[i] = double(rem % n) / double(n);
            rem /= n;
        }
        return fn(s);
    };

    double sum = kernels::grid_sum(total, point_value, grid.parallel, grid.chunk);
    QuadResult qr;
    qr.value = sum / double(total);

    // half-grid comparison on even indices
    if (n % 2 == 0) {
        int64_t nh = n / 2;
        int64_t ctotal = 1;
        for (int i = 0; i < d; ++i) ctotal *= nh;
        auto coarse_value = [&](int64_t idx) {
            double s[3] = {0, 0, 0};
            int64_t rem = idx;
            for (int i = 0; i < d; ++i) {
                s[i] = double(rem % nh) / double(nh);
                rem /= nh;
            }
            return fn(s);
        };
        double csum = kernels::grid_sum(ctotal, coarse_value, grid.parallel, grid.chunk);
        qr.error_heuristic = std::abs(qr.value - csum / double(ctotal));
    } else {
        qr.error_heuristic = std::abs(qr.value) * 1e-2;
    }
    return qr;
}

MultiPoly MultiPoly::from1(const LaurentPoly1& p) {
    MultiPoly mp;
    mp.dims = 1;
    for (int64_t e = p.low_exp(); e <= p.high_exp(); ++e) {
        if (p.coeff(e) == 0) continue;
        mp.exps.push_back({e, 0, 0});
        mp.coeffs.push_back(to_double(p.coeff(e)));
    }
    return mp;
}

MultiPoly MultiPoly::from2(const LaurentPoly2& p) {
    MultiPoly mp;
    mp.dims = 2;
    for (auto& [ij, c] : p.terms()) {
        mp.exps.push_back({ij.first, ij.second, 0});
        mp.coeffs.push_back(to_double(c));
    }
    return mp;
}

namespace {

// inner-variable slice at fixed outer angles; returns Jensen value and a
// near-circle flag
double slice_mahler(const MultiPoly& f, const double* s_outer, bool& flagged) {
    int64_t lo = 0, hi = 0;
    bool first = true;
    for (auto& e : f.exps) {
        if (first) {
            lo = hi = e[0];
            first = false;
        } else {
            lo = std::min(lo, e[0]);
            hi = std::max(hi, e[0]);
        }
    }
    std::vector<cplx> c(size_t(hi - lo + 1), 0.0);
    for (size_t t = 0; t < f.exps.size(); ++t) {
        cplx w = f.coeffs[t];
        if (f.dims >= 2) w *= std::pow(unit(s_outer[0]), double(f.exps[t][1]));
        if (f.dims >= 3) w *= std::pow(unit(s_outer[1]), double(f.exps[t][2]));
        c[size_t(f.exps[t][0] - lo)] += w;
    }
    double maxc = 0.0;
    for (auto& v : c) maxc = std::max(maxc, std::abs(v));
    if (maxc < 1e-13) {
        flagged = true;  // slice numerically zero; integrable singularity
        return -30.0;
    }
    MahlerValue mv = mahler1(c);
    if (mv.flagged_slices) flagged = true;
    return mv.log_value;
}

}  // namespace

MahlerValue mahlerN(const MultiPoly& f, const QuadratureGrid& grid) {
    if (f.exps.empty()) throw std::invalid_argument("mahlerN: zero polynomial");
    MahlerValue mv;
    mv.method = MahlerValue::Method::Quadrature;
    if (f.dims == 1) {
        int64_t lo = f.exps[0][0], hi = f.exps[0][0];
        for (auto& e : f.exps) {
            lo = std::min(lo, e[0]);
            hi = std::max(hi, e[0]);
        }
        std::vector<cplx> c(size_t(hi - lo + 1), 0.0);
        for (size_t t = 0; t < f.exps.size(); ++t) c[size_t(f.exps[t][0] - lo)] += f.coeffs[t];
        return mahler1(c);
    }

    int flags = 0;
    QuadratureGrid outer = grid;
    outer.dims = f.dims - 1;
    auto fn = [&](const double* s) {
        bool fl = false;
        double v = slice_mahler(f, s, fl);
        if (fl) {
#pragma omp atomic
            ++flags;
        }
        return v;
    };
    QuadResult qr = torus_quad(fn, outer);
    mv.log_value = qr.value;
    mv.error_bound = qr.error_heuristic;
    mv.flagged_slices = flags;
    return mv;
}

MahlerValue mahlerN(const LaurentPoly2& f, const QuadratureGrid& grid) {
    return mahlerN(MultiPoly::from2(f), grid);
}

}  // namespace heis::numeric

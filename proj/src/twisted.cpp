#include "heis/twisted.hpp"

#include <cmath>
#include <stdexcept>

namespace heis::entropy {

XDecomposition x_decompose(const GroupRingElement& f) {
    if (f.is_zero()) throw std::invalid_argument("x_decompose: zero element");
    int64_t kmin = f.terms().begin()->first.k, kmax = kmin;
    for (auto& [m, c] : f.terms()) {
        kmin = std::min(kmin, m.k);
        kmax = std::max(kmax, m.k);
    }
    XDecomposition d;
    d.shift = kmin;
    d.g.assign(size_t(kmax - kmin + 1), LaurentPoly2());
    // x^{-kmin} normalization: f = x^{kmin} sum_j x^j g_j(y,z), reading the
    // normal form x^k y^l z^m as x^k (y^l z^m)
    for (auto& [m, c] : f.terms()) d.g[size_t(m.k - kmin)].add_term(m.l, m.m, c);
    return d;
}

TwistedMatrix build_a_matrix(const XDecomposition& d, int64_t q, cplx zeta, cplx xi, cplx eta) {
    if (q < 1) throw std::invalid_argument("build_a_matrix: q >= 1");
    TwistedMatrix mtx;
    if (q == 1) {
        mtx.q = 1;
        cplx v = 0.0;
        for (size_t j = 0; j < d.g.size(); ++j)
            v += std::pow(xi, double(j)) * d.g[j].eval(eta, zeta);
        mtx.entries = {v * std::pow(xi, double(d.shift))};
        return mtx;
    }
    mtx.q = q;
    mtx.entries.assign(size_t(q * q), cplx(0.0));
    std::vector<cplx> eta_pow((size_t)q);
    for (int64_t i = 0; i < q; ++i) eta_pow[size_t(i)] = eta * std::pow(zeta, double(i));
    for (int64_t i = 0; i < q; ++i) {
        cplx xij = 1.0;
        for (size_t j = 0; j < d.g.size(); ++j) {
            int64_t col = ((i + int64_t(j)) % q + q) % q;
            mtx.at(i, col) += xij * d.g[j].eval(eta_pow[size_t(i)], zeta);
            xij *= xi;
        }
    }
    return mtx;
}

TwistedMatrix build_a_matrix(const GroupRingElement& f, int64_t q, cplx zeta, cplx xi, cplx eta) {
    return build_a_matrix(x_decompose(f), q, zeta, xi, eta);
}

LogDet log_det(TwistedMatrix m) {
    int64_t n = m.q;
    double logabs = 0.0;
    cplx phase = 1.0;
    for (int64_t col = 0; col < n; ++col) {
        int64_t piv = col;
        double best = std::abs(m.at(col, col));
        for (int64_t r = col + 1; r < n; ++r) {
            double v = std::abs(m.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
        if (piv != col) {
            for (int64_t j = col; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            phase = -phase;
        }
        cplx p = m.at(col, col);
        logabs += std::log(std::abs(p));
        phase *= p / std::abs(p);
        for (int64_t r = col + 1; r < n; ++r) {
            cplx factor = m.at(r, col) / p;
            if (factor == cplx(0.0)) continue;
            for (int64_t j = col; j < n; ++j) m.at(r, j) -= factor * m.at(col, j);
        }
    }
    return {logabs, phase};
}

cplx tri_circulant_det(const std::vector<cplx>& a, const std::vector<cplx>& b,
                       const std::vector<cplx>& c) {
    size_t q = a.size();
    if (q < 3 || b.size() != q || c.size() != q)
        throw std::invalid_argument("tri_circulant_det: need three lists of equal length >= 3");
    cplx pa = 1.0, pc = 1.0;
    for (size_t j = 0; j < q; ++j) {
        pa *= a[j];
        pc *= c[j];
    }
    // trace of T_0 T_1 ... T_{q-1} with T_j = [[-b_j, c_j], [-a_j, 0]]
    cplx m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
    for (size_t j = 0; j < q; ++j) {
        cplx t00 = m00 * -b[j] + m01 * -a[j];
        cplx t01 = m00 * c[j];
        cplx t10 = m10 * -b[j] + m11 * -a[j];
        cplx t11 = m10 * c[j];
        m00 = t00;
        m01 = t01;
        m10 = t10;
        m11 = t11;
    }
    return pa - (m00 + m11) + pc;
}

cplx quadratic_det(const LaurentPoly2& g0, const LaurentPoly2& g1, const LaurentPoly2& g2,
                   int64_t q, cplx zeta, cplx xi, cplx eta) {
    if (q < 3) throw std::invalid_argument("quadratic_det: q >= 3 required");
    std::vector<cplx> a((size_t)q), b((size_t)q), c((size_t)q);
    for (int64_t j = 0; j < q; ++j) {
        cplx ej = eta * std::pow(zeta, double(j));
        a[size_t(j)] = g0.eval(ej, zeta);
        b[size_t(j)] = g1.eval(ej, zeta) * xi;
        c[size_t(j)] = g2.eval(ej, zeta) * xi * xi;
    }
    return tri_circulant_det(a, b, c);
}

int128 lucas_number(int64_t q) {
    if (q < 0) throw std::invalid_argument("lucas_number: q >= 0");
    // tau^q + sigma^q = trace of [[1,1],[1,0]]^q
    int128 a = 2, b = 1;  // L_0, L_1
    if (q == 0) return 2;
    for (int64_t i = 1; i < q; ++i) {
        int128 nb = checked_add(a, b);
        a = b;
        b = nb;
    }
    return b;
}

int128 circulant_abs_det(const LaurentPoly1& f, int64_t n) {
    if (n < 1) throw std::invalid_argument("circulant_abs_det: n >= 1");
    if (f.is_zero()) return 0;
    std::vector<std::vector<int128>> a(size_t(n), std::vector<int128>(size_t(n), 0));
    for (int64_t e = f.low_exp(); e <= f.high_exp(); ++e) {
        int128 c = f.coeff(e);
        if (c == 0) continue;
        for (int64_t i = 0; i < n; ++i) {
            int64_t j = ((i + e) % n + n) % n;
            a[size_t(i)][size_t(j)] = checked_add(a[size_t(i)][size_t(j)], c);
        }
    }
    // fraction-free Bareiss
    int sign = 1;
    int128 prev = 1;
    for (int64_t col = 0; col < n - 1; ++col) {
        if (a[size_t(col)][size_t(col)] == 0) {
            int64_t piv = -1;
            for (int64_t r = col + 1; r < n; ++r)
                if (a[size_t(r)][size_t(col)] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(a[size_t(col)], a[size_t(piv)]);
            sign = -sign;
        }
        for (int64_t r = col + 1; r < n; ++r) {
            for (int64_t j = col + 1; j < n; ++j) {
                int128 num = checked_sub(checked_mul(a[size_t(r)][size_t(j)], a[size_t(col)][size_t(col)]),
                                         checked_mul(a[size_t(r)][size_t(col)], a[size_t(col)][size_t(j)]));
                if (num % prev != 0) throw std::logic_error("circulant_abs_det: inexact division");
                a[size_t(r)][size_t(j)] = num / prev;
            }
            a[size_t(r)][size_t(col)] = 0;
        }
        prev = a[size_t(col)][size_t(col)];
    }
    int128 det = a[size_t(n - 1)][size_t(n - 1)];
    (void)sign;
    return abs128(det);
}

}  // namespace heis::entropy

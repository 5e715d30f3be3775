#include "heis/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "heis/expansive.hpp"
#include "heis/kernels.hpp"

namespace heis::entropy {

using kernels::DenseBox;
using kernels::Term;
using numeric::cplx;
using numeric::unit;

namespace {

std::vector<Term> element_terms(const GroupRingElement& e) {
    std::vector<Term> ts;
    ts.reserve(e.size());
    for (auto& [m, c] : e.terms()) ts.push_back({m.k, m.l, m.m, c});
    return ts;
}

bool is_prime(int64_t q) {
    if (q < 2) return false;
    for (int64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

}  // namespace

EntropyEstimate trace_series(const GroupRingElement& f, double tol, bool parallel) {
    auto dom = expansive::is_lopsided(f);
    if (!dom) throw std::invalid_argument("trace_series: element is not lopsided");
    if (tol <= 0) throw std::invalid_argument("trace_series: tol > 0 required");
    Monomial d0 = *dom;
    int128 c0 = f.coeff(d0);
    int sign = sgn128(c0);
    int128 f1 = abs128(c0);
    GroupRingElement fpp = mul(GroupRingElement(inverse(d0), sign), f);
    GroupRingElement G = sub(GroupRingElement(f1), fpp);

    EntropyEstimate est;
    est.method = EntropyEstimate::Method::TraceSeries;
    est.error_is_heuristic = false;
    double logf1 = std::log(to_double(f1));
    if (G.is_zero()) {
        est.value = logf1;
        est.diagnostics["terms"] = 0;
        est.diagnostics["tail"] = 0.0;
        return est;
    }

    long double s_num = (long double)to_double(G.l1_norm());
    long double f1d = (long double)to_double(f1);
    long double s = s_num / f1d;

    // the grading k+l mod 2 kills every odd trace when all of G sits in odd
    // degree; the tail bound then runs over even n only
    bool even_only = true;
    for (auto& [m, c] : G.terms())
        if (((m.k + m.l) % 2 + 2) % 2 == 0) even_only = false;

    auto tail_bound = [&](int64_t N) -> long double {
        if (even_only) {
            int64_t n0 = N + 1 + (N + 1) % 2;  // smallest even > N
            return powl(s, (long double)n0) / ((long double)n0 * (1 - s * s)) * (1 + 1e-12L);
        }
        return powl(s, (long double)(N + 1)) / ((long double)(N + 1) * (1 - s)) * (1 + 1e-12L);
    };

    int64_t N = 1;
    while (tail_bound(N) > (long double)tol) {
        ++N;
        double need = double(N) * std::log2((double)s_num);
        if (need > 125.0)
            throw std::invalid_argument("trace_series: tol needs traces beyond 128-bit range");
        if (N > 100000) throw std::invalid_argument("trace_series: tol unreachable");
    }

    // powers of G to depth ceil(N/2); T_{s+t} comes from pairing the depth-s
    // and depth-t tables
    int64_t half = (N + 1) / 2;
    std::vector<Term> steps = element_terms(G);
    auto boxes = kernels::reach_boxes(steps, half);
    if (boxes[size_t(half)].cells() > size_t(40'000'000))
        throw std::invalid_argument("trace_series: support box too large at this tol");

    std::vector<int128> T(size_t(N + 1), 0);
    DenseBox cur = boxes[0];
    cur.allocate();
    cur.set(0, 0, 0, 1);
    for (int64_t t = 1; t <= half; ++t) {
        DenseBox nxt = boxes[size_t(t)];
        nxt.allocate();
        kernels::convolve(cur, nxt, steps, parallel);
        if (2 * t - 1 <= N) T[size_t(2 * t - 1)] = kernels::pair_constant_term(cur, nxt);
        if (2 * t <= N) T[size_t(2 * t)] = kernels::pair_constant_term(nxt, nxt);
        cur = std::move(nxt);
    }

    long double acc = 0.0L;
    long double fpow = f1d;
    for (int64_t n = 1; n <= N; ++n) {
        if (T[size_t(n)] != 0) acc += (long double)to_double(T[size_t(n)]) / ((long double)n * fpow);
        fpow *= f1d;
    }
    est.value = double((long double)logf1 - acc);
    double tail = double(tail_bound(N));
    est.error_bound = tail + 1e-12 * double(N);
    est.diagnostics["terms"] = N;
    est.diagnostics["s"] = double(s);
    est.diagnostics["tail"] = tail;
    est.diagnostics["even_only"] = even_only;
    return est;
}

EntropyEstimate free_group_closed_form() {
    EntropyEstimate est;
    est.method = EntropyEstimate::Method::ClosedForm;
    est.value = std::log((35.0 + 13.0 * std::sqrt(13.0)) / 18.0);
    est.error_bound = 1e-15;
    est.error_is_heuristic = false;
    return est;
}

PeriodicResult periodic_determinant(const GroupRingElement& f, const std::vector<int64_t>& qs,
                                    const numeric::QuadratureGrid& grid) {
    if (f.is_zero()) throw std::invalid_argument("periodic_determinant: zero element");
    XDecomposition d = x_decompose(f);
    PeriodicResult res;
    for (int64_t q : qs) {
        if (!is_prime(q))
            throw std::invalid_argument("periodic_determinant: q must be prime (limit theorem)");
        double total = 0.0;
        for (int64_t r = 0; r < q; ++r) {
            int64_t order = (r == 0) ? 1 : q;
            cplx zeta = unit(double(r) / double(q));
            numeric::QuadratureGrid g2 = grid;
            g2.dims = 2;
            auto fn = [&](const double* s) {
                auto m = build_a_matrix(d, order, zeta, unit(s[0]), unit(s[1]));
                auto ld = log_det(std::move(m));
                double v = ld.log_abs;
                if (!std::isfinite(v) || v < std::log(1e-18) * order) {
#pragma omp atomic
                    ++res.near_singular_cells;
                    return std::log(1e-18) * double(order);
                }
                return v;
            };
            total += numeric::torus_quad(fn, g2).value;
        }
        res.q.push_back(q);
        res.value.push_back(total / double(q * q));
    }
    // Lagrange extrapolation in 1/q through the last (up to) three points
    size_t k = res.q.size();
    if (k == 1) {
        res.extrapolated = res.value[0];
    } else {
        size_t use = std::min<size_t>(3, k);
        std::vector<double> x(use), y(use);
        for (size_t i = 0; i < use; ++i) {
            x[i] = 1.0 / double(res.q[k - use + i]);
            y[i] = res.value[k - use + i];
        }
        double v = 0.0;
        for (size_t i = 0; i < use; ++i) {
            double w = y[i];
            for (size_t j = 0; j < use; ++j)
                if (j != i) w *= (0.0 - x[j]) / (x[i] - x[j]);
            v += w;
        }
        res.extrapolated = v;
    }
    res.estimate.method = EntropyEstimate::Method::PeriodicDet;
    res.estimate.value = res.extrapolated;
    res.estimate.error_bound =
        k >= 2 ? std::abs(res.value.back() - res.extrapolated) : 0.1;
    res.estimate.diagnostics["q"] = res.q;
    res.estimate.diagnostics["values"] = res.value;
    res.estimate.diagnostics["near_singular_cells"] = res.near_singular_cells;
    return res;
}

EntropyEstimate linear_formula(const LaurentPoly2& g, const LaurentPoly2& h, int64_t zeta_grid,
                               std::vector<std::vector<double>>* curve) {
    if (g.is_zero() && h.is_zero())
        throw std::invalid_argument("linear_formula: g and h both zero");
    auto m_at = [](const LaurentPoly2& p, cplx zeta) {
        if (p.is_zero()) return -std::numeric_limits<double>::infinity();
        Slice s = slice(p, zeta);
        double maxc = 0.0;
        for (auto& c : s.coeffs) maxc = std::max(maxc, std::abs(c));
        if (maxc < 1e-13) return -30.0;  // slice degenerates; integrable dip
        return numeric::mahler1(s.coeffs).log_value;
    };
    double sum = 0.0, sum_half = 0.0;
    for (int64_t i = 0; i < zeta_grid; ++i) {
        cplx zeta = unit(double(i) / double(zeta_grid));
        double mg = m_at(g, zeta), mh = m_at(h, zeta);
        double v = std::max(mg, mh);
        sum += v;
        if (i % 2 == 0) sum_half += v;
        if (curve) curve->push_back({double(i) / double(zeta_grid), mg, mh, v});
    }
    EntropyEstimate est;
    est.method = EntropyEstimate::Method::LinearFormula;
    est.value = sum / double(zeta_grid);
    est.error_bound = std::abs(est.value - sum_half / double((zeta_grid + 1) / 2)) + 1e-12;
    est.diagnostics["zeta_grid"] = zeta_grid;
    return est;
}

FaceBounds face_entropy_lower_bound(const GroupRingElement& f,
                                    const numeric::QuadratureGrid& grid) {
    if (f.is_zero()) throw std::invalid_argument("face_entropy_lower_bound: zero element");
    FaceBounds out;
    out.best = -std::numeric_limits<double>::infinity();
    auto zc = z_coefficients(f);
    NewtonPolygon np = newton_polygon(f);

    for (auto& v : np.vertices) {
        double m = numeric::mahler1(zc.at(v)).log_value;
        out.faces.push_back({"vertex(" + std::to_string(v.first) + "," +
                                 std::to_string(v.second) + ")",
                             m});
        out.best = std::max(out.best, m);
    }
    size_t V = np.vertices.size();
    size_t edge_count = V >= 3 ? V : (V == 2 ? 1 : 0);
    for (size_t e = 0; e < edge_count; ++e) {
        auto A = np.vertices[e];
        auto B = np.vertices[(e + 1) % V];
        int64_t dk = B.first - A.first, dl = B.second - A.second;
        int64_t g0 = std::gcd(std::abs(dk), std::abs(dl));
        int64_t pk = dk / g0, pl = dl / g0;
        // the face polynomial lives in the commutative subgroup generated by
        // w = x^pk y^pl and z; the z-twists of w powers are folded in exactly
        Monomial base{A.first, A.second, 0};
        Monomial w{pk, pl, 0};
        LaurentPoly2 face;  // (w exponent, z exponent)
        for (int64_t j = 0; j <= g0; ++j) {
            auto it = zc.find({A.first + j * pk, A.second + j * pl});
            if (it == zc.end()) continue;
            Monomial rel = mul(inverse(base), Monomial{A.first + j * pk, A.second + j * pl, 0});
            int64_t twist = rel.m - pow(w, j).m;
            for (int64_t ze = it->second.low_exp(); ze <= it->second.high_exp(); ++ze)
                face.add_term(j, ze + twist, it->second.coeff(ze));
        }
        double m = numeric::mahlerN(face, grid).log_value;
        out.faces.push_back({"edge(" + std::to_string(A.first) + "," + std::to_string(A.second) +
                                 ")-(" + std::to_string(B.first) + "," +
                                 std::to_string(B.second) + ")",
                             m});
        out.best = std::max(out.best, m);
    }
    return out;
}

RiemannSumReport riemann_sum_inequality(const std::vector<cplx>& phi, int64_t n, cplx zeta) {
    if (n < 1) throw std::invalid_argument("riemann_sum_inequality: n >= 1");
    RiemannSumReport rep;
    auto eval = [&](cplx u) {
        cplx p = 0.0;
        for (size_t i = phi.size(); i-- > 0;) p = p * u + phi[i];
        return p;
    };
    double acc = 0.0;
    bool hit_root = false;
    for (int64_t j = 0; j < n; ++j) {
        double a = std::abs(eval(unit(double(j) / double(n)) * zeta));
        if (a == 0.0)
            hit_root = true;
        else
            acc += std::log(a);
    }
    rep.riemann_sum = hit_root ? -std::numeric_limits<double>::infinity() : acc / double(n);
    rep.mahler = numeric::mahler1(phi).log_value;
    int64_t D = int64_t(phi.size()) - 1;
    rep.bound = rep.mahler + double(D) * std::log(2.0) / double(n);
    rep.holds = rep.riemann_sum <= rep.bound + 1e-9;
    return rep;
}

ZeroEntropyReport zero_entropy_heuristic(const LaurentPoly2& f, const numeric::QuadratureGrid& grid,
                                         double margin, int64_t k_max, int64_t n_max) {
    if (f.is_zero()) throw std::invalid_argument("zero_entropy_heuristic: zero polynomial");
    ZeroEntropyReport rep;
    rep.mahler = numeric::mahlerN(f, grid).log_value;
    if (rep.mahler > margin) {
        rep.status = ZeroEntropyStatus::Positive;
        return rep;
    }
    LaurentPoly2 rem = f;
    for (int rounds = 0; rounds < 64; ++rounds) {
        if (rem.is_unit_monomial()) {
            rep.status = ZeroEntropyStatus::ZeroCandidate;
            return rep;
        }
        auto hit = generalized_cyclotomic_divisor(rem, k_max, n_max);
        if (!hit) break;
        rem = *divide_exact(rem, generalized_cyclotomic(hit->k, hit->n1, hit->n2));
        rep.factors.push_back(*hit);
    }
    rep.status = ZeroEntropyStatus::Undetermined;
    return rep;
}

QuadraticExperiment quadratic_entropy_experiment(const LaurentPoly2& g0, const LaurentPoly2& g1,
                                                 const LaurentPoly2& g2,
                                                 const std::vector<int64_t>& qs,
                                                 const numeric::QuadratureGrid& grid) {
    QuadraticExperiment ex;
    // g1(y,z) g1(yz,z) == -g2(y,z) g0(yz,z), exactly
    auto shift_y_by_z = [](const LaurentPoly2& p) {
        LaurentPoly2 r;
        for (auto& [ij, c] : p.terms()) r.add_term(ij.first, ij.second + ij.first, c);
        return r;
    };
    ex.simple_det_condition = mul(g1, shift_y_by_z(g1)) == neg(mul(g2, shift_y_by_z(g0)));

    double log_tau = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    auto m_at = [](const LaurentPoly2& p, cplx zeta) {
        if (p.is_zero()) return -std::numeric_limits<double>::infinity();
        Slice s = slice(p, zeta);
        double maxc = 0.0;
        for (auto& c : s.coeffs) maxc = std::max(maxc, std::abs(c));
        if (maxc < 1e-13) return -30.0;
        return numeric::mahler1(s.coeffs).log_value;
    };
    int64_t n = grid.n;
    double acc = 0.0;
    for (int64_t i = 0; i < n; ++i) {
        cplx zeta = unit(double(i) / double(n));
        double mid = ex.simple_det_condition ? log_tau + m_at(g1, zeta)
                                             : -std::numeric_limits<double>::infinity();
        acc += std::max({m_at(g0, zeta), mid, m_at(g2, zeta)});
    }
    ex.conjectured = acc / double(n);

    // f = g0 + x g1 + x^2 g2 as a ring element, x powers on the left
    GroupRingElement f;
    const LaurentPoly2* gs[3] = {&g0, &g1, &g2};
    for (int j = 0; j < 3; ++j)
        for (auto& [lm, c] : gs[j]->terms())
            f.add_term(mul(Monomial{j, 0, 0}, Monomial{0, lm.first, lm.second}), c);
    ex.periodic = periodic_determinant(f, qs, grid).extrapolated;
    return ex;
}

}  // namespace heis::entropy

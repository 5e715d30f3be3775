#include "heis/expansive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "heis/kernels.hpp"
#include "heis/mahler.hpp"
#include "heis/twisted.hpp"
#include "heis/word_norm.hpp"

namespace heis::expansive {

using kernels::DenseBox;
using kernels::Term;
using numeric::unit;

std::optional<Monomial> is_lopsided(const GroupRingElement& f) {
    if (f.is_zero()) return std::nullopt;
    auto best = f.terms().begin();
    int128 total = 0;
    for (auto it = f.terms().begin(); it != f.terms().end(); ++it) {
        total = checked_add(total, abs128(it->second));
        if (abs128(it->second) > abs128(best->second)) best = it;
    }
    if (abs128(best->second) > total - abs128(best->second)) return best->first;
    return std::nullopt;
}

namespace {

std::vector<Term> element_terms(const GroupRingElement& e) {
    std::vector<Term> ts;
    ts.reserve(e.size());
    for (auto& [m, c] : e.terms()) ts.push_back({m.k, m.l, m.m, c});
    return ts;
}

mpq_class mpq_pow(mpq_class b, int64_t e) {
    mpq_class r = 1;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

double ceil_double(const mpq_class& q) {
    double d = q.get_d();
    return d + std::abs(d) * 1e-15 + 1e-300;
}

}  // namespace

L1Approx invert_l1(const GroupRingElement& f, double eps, bool parallel) {
    auto dom = is_lopsided(f);
    if (!dom) throw std::invalid_argument("invert_l1: element is not lopsided");
    if (eps <= 0) throw std::invalid_argument("invert_l1: eps > 0 required");
    Monomial d0 = *dom;
    int128 c0 = f.coeff(d0);
    int sign = sgn128(c0);
    int128 f1 = abs128(c0);
    // f'' = sign * d0^{-1} f has coefficient f1 > 0 at the identity
    GroupRingElement fpp = mul(GroupRingElement(inverse(d0), sign), f);
    GroupRingElement G = sub(GroupRingElement(f1), fpp);  // f'' = f1 (1 - G/f1)

    L1Approx out;
    if (G.is_zero()) {
        out.element[inverse(d0)] = mpq_class(sign) / mpq_class(to_string(f1));
        out.decay_rate = 0.0;
        out.decay_const = 1.0 / to_double(f1);
        return out;
    }

    mpq_class f1q(to_string(f1));
    mpq_class s = mpq_class(to_string(G.l1_norm())) / f1q;
    mpq_class epsq(eps);
    // smallest N with s^{N+1} / (1-s) <= eps
    int64_t N = 0;
    mpq_class pw = s;
    while (pw / (1 - s) > epsq) {
        pw *= s;
        ++N;
        if (N > 4096) throw std::invalid_argument("invert_l1: eps unreachably small");
    }
    // 128-bit capacity: coefficients of E_N stay under f1^N / (1-s), and the
    // residual convolution multiplies by ||f||_1
    {
        mpq_class cap = mpq_pow(f1q, N + 1) / (1 - s) * mpq_class(to_string(f.l1_norm()));
        mpq_class lim("85070591730234615865843651857942052864");  // 2^126
        if (cap > lim)
            throw overflow_error("invert_l1: this eps needs more than 128-bit headroom");
    }

    std::vector<Term> gsteps = element_terms(G);
    auto boxes = kernels::reach_boxes(gsteps, N + 1);
    size_t cell_limit = 40'000'000;
    if (boxes[size_t(N)].cells() > cell_limit)
        throw std::invalid_argument("invert_l1: support box too large at this eps");

    // Horner: E_j = G * E_{j-1} + f1^j, E_0 = 1; E_N = sum G^k f1^{N-k}
    DenseBox E = boxes[0];
    E.allocate();
    E.set(0, 0, 0, 1);
    int128 f1pow = 1;
    for (int64_t j = 1; j <= N; ++j) {
        DenseBox nxt = boxes[size_t(j)];
        nxt.allocate();
        kernels::convolve(E, nxt, gsteps, parallel);
        f1pow = checked_mul(f1pow, f1);
        nxt.a[nxt.index(0, 0, 0)] = checked_add(nxt.a[nxt.index(0, 0, 0)], f1pow);
        E = std::move(nxt);
    }
    int128 denom = checked_mul(f1pow, f1);  // f1^{N+1}
    mpq_class denomq(to_string(denom));

    // exact residual: f'' E_N = f1^{N+1} - G^{N+1}
    {
        std::vector<Term> fsteps = element_terms(fpp);
        DenseBox R = boxes[size_t(N + 1)];
        R.allocate();
        kernels::convolve(E, R, fsteps, parallel);
        int128 resid = 0;
        for (int64_t k = R.kmin; k <= R.kmax; ++k)
            for (int64_t l = R.lmin; l <= R.lmax; ++l)
                for (int64_t m = R.mmin; m <= R.mmax; ++m) {
                    int128 v = R.a[R.index(k, l, m)];
                    if (k == 0 && l == 0 && m == 0) v = checked_sub(v, denom);
                    resid = checked_add(resid, abs128(v));
                }
        out.residual_l1 = mpq_class(to_string(resid)) / denomq;
    }

    // element = sign * (E_N / f1^{N+1}) * d0^{-1}
    Monomial d0inv = inverse(d0);
    for (int64_t k = E.kmin; k <= E.kmax; ++k)
        for (int64_t l = E.lmin; l <= E.lmax; ++l)
            for (int64_t m = E.mmin; m <= E.mmax; ++m) {
                int128 v = E.a[E.index(k, l, m)];
                if (v == 0) continue;
                Monomial w = mul(Monomial{k, l, m}, d0inv);
                out.element[w] = mpq_class(to_string(sign < 0 ? -v : v)) / denomq;
            }

    out.terms_used = N;
    out.tail_bound = ceil_double(pw / (1 - s));
    int64_t tau = 0;
    for (auto& [m, c] : G.terms()) tau = std::max(tau, word_norm(m));
    double sd = s.get_d();
    out.decay_rate = std::pow(sd, 1.0 / double(tau));
    out.decay_const = 1.0 / (to_double(f1) * (1.0 - sd));
    if (!d0.is_identity())
        out.decay_const *= std::pow(out.decay_rate, -double(word_norm(d0)));
    return out;
}

// ---------- lopsidize ----------

namespace {

using FloatElem = std::map<Monomial, double>;

FloatElem fmul(const FloatElem& a, const FloatElem& b, int64_t radius, double drop) {
    FloatElem r;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) {
            Monomial m = mul(ma, mb);
            if (std::abs(m.k) > radius || std::abs(m.l) > radius ||
                std::abs(m.m) > radius * radius + radius)
                continue;
            r[m] += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();)
        it = std::abs(it->second) < drop ? r.erase(it) : std::next(it);
    return r;
}

FloatElem to_float(const GroupRingElement& f) {
    FloatElem r;
    for (auto& [m, c] : f.terms()) r[m] = to_double(c);
    return r;
}

double fnorm1(const FloatElem& a) {
    double s = 0;
    for (auto& [m, c] : a) s += std::abs(c);
    return s;
}

}  // namespace

std::optional<GroupRingElement> lopsidize(const GroupRingElement& f,
                                          const LopsidizeBudget& budget) {
    if (f.is_zero()) return std::nullopt;
    if (is_lopsided(f)) return GroupRingElement::one();

    FloatElem ff = to_float(f);
    double n1 = fnorm1(ff);
    FloatElem w;
    for (auto& [m, c] : f.terms()) w[inverse(m)] = to_double(c) / (n1 * n1);

    auto try_round = [&](const FloatElem& cand) -> std::optional<GroupRingElement> {
        double top = 0;
        for (auto& [m, c] : cand) top = std::max(top, std::abs(c));
        if (top == 0) return std::nullopt;
        for (int64_t scale = 1; scale <= budget.max_scale;
             scale = scale < 16 ? scale + 1 : scale * 2) {
            GroupRingElement g;
            for (auto& [m, c] : cand) {
                double v = std::round(double(scale) * c / top);
                if (std::abs(v) > 1e18) return std::nullopt;
                if (v != 0) g.add_term(m, (int128)(long long)v);
            }
            if (g.is_zero()) continue;
            if (is_lopsided(mul(f, g))) return g;
        }
        return std::nullopt;
    };

    for (int it = 0; it < budget.max_iterations; ++it) {
        // w <- w (2 - f w), truncated
        FloatElem fw = fmul(ff, w, budget.support_radius, 1e-14);
        FloatElem corr;
        for (auto& [m, c] : fw) corr[m] = -c;
        corr[Monomial{}] += 2.0;
        w = fmul(w, corr, budget.support_radius, 1e-14);
        double wn = fnorm1(w);
        if (!(wn < 1e12)) return std::nullopt;  // diverging
        if (auto g = try_round(w)) return g;
    }
    return std::nullopt;
}

// ---------- linear-in-y geometric criterion ----------

namespace {

double slice_mahler_at(const LaurentPoly2& p, cplx zeta) {
    Slice s = slice(p, zeta);
    if (s.coeffs.empty()) return -std::numeric_limits<double>::infinity();
    return numeric::mahler1(s.coeffs).log_value;
}

double log_abs_eval(const LaurentPoly2& p, cplx x, cplx z) {
    double a = std::abs(p.eval(x, z));
    return a == 0 ? -std::numeric_limits<double>::infinity() : std::log(a);
}

struct MinScan {
    double min_abs;
    cplx arg_x, arg_z;
};

MinScan scan_min_abs(const LaurentPoly2& p, int64_t n, int refine_rounds) {
    MinScan best{std::numeric_limits<double>::infinity(), 1.0, 1.0};
    double bx = 0, bz = 0;
    for (int64_t i = 0; i < n; ++i)
        for (int64_t j = 0; j < n; ++j) {
            double sx = double(i) / double(n), sz = double(j) / double(n);
            double v = std::abs(p.eval(unit(sx), unit(sz)));
            if (v < best.min_abs) {
                best.min_abs = v;
                bx = sx;
                bz = sz;
            }
        }
    double h = 1.0 / double(n);
    for (int r = 0; r < refine_rounds; ++r) {
        double step = h / 2.0;
        double cx = bx, cz = bz;
        for (int di = -2; di <= 2; ++di)
            for (int dj = -2; dj <= 2; ++dj) {
                double sx = cx + step * di / 2.0, sz = cz + step * dj / 2.0;
                double v = std::abs(p.eval(unit(sx), unit(sz)));
                if (v < best.min_abs) {
                    best.min_abs = v;
                    bx = sx;
                    bz = sz;
                }
            }
        h = step;
    }
    best.arg_x = unit(bx);
    best.arg_z = unit(bz);
    return best;
}

}  // namespace

CocycleTrace bounded_cocycle_scan(const LaurentPoly2& g, const LaurentPoly2& h, cplx zeta, cplx xi,
                                  int64_t window) {
    CocycleTrace tr;
    tr.zeta = zeta;
    tr.xi = xi;
    tr.window = window;
    tr.values.assign(size_t(2 * window + 1), 0.0);
    auto phi = [&](cplx at) { return log_abs_eval(g, at, zeta) - log_abs_eval(h, at, zeta); };
    double acc = 0.0;
    cplx at = xi;
    for (int64_t n = 1; n <= window; ++n) {
        acc += phi(at);
        at *= zeta;
        tr.values[size_t(window + n)] = acc;
    }
    acc = 0.0;
    at = xi;
    for (int64_t n = -1; n >= -window; --n) {
        at /= zeta;
        acc -= phi(at);
        tr.values[size_t(window + n)] = acc;
    }
    tr.sup_above = *std::max_element(tr.values.begin(), tr.values.end());
    return tr;
}

ExpansivenessVerdict check_linear_y_expansive(const LaurentPoly2& h, const LaurentPoly2& g,
                                              const LinearCheckOptions& opts) {
    if (h.is_zero() || g.is_zero())
        throw std::invalid_argument("check_linear_y_expansive: h and g must be nonzero");
    ExpansivenessVerdict verdict;
    verdict.status = ExpansivenessVerdict::Status::Undetermined;
    Json& diag = verdict.diagnostics;

    diag["zeta_grid"] = opts.zeta_grid;
    diag["xi_grid"] = opts.xi_grid;
    diag["nonvanish_margin"] = opts.nonvanish_margin;
    diag["sign_margin"] = opts.sign_margin;
    diag["rational_q_max"] = opts.rational_q_max;

    MinScan gs = scan_min_abs(g, 256, opts.refine_rounds);
    MinScan hs = scan_min_abs(h, 256, opts.refine_rounds);
    bool g_vanishes = gs.min_abs < opts.nonvanish_margin;
    bool h_vanishes = hs.min_abs < opts.nonvanish_margin;
    diag["g_min_abs"] = gs.min_abs;
    diag["h_min_abs"] = hs.min_abs;

    int64_t n = opts.zeta_grid;
    std::vector<double> D((size_t)n);
    auto Dat = [&](double theta) {
        cplx zeta = unit(theta);
        return slice_mahler_at(g, zeta) - slice_mahler_at(h, zeta);
    };
    double dmin = std::numeric_limits<double>::infinity(), dmax = -dmin;
    for (int64_t i = 0; i < n; ++i) {
        D[size_t(i)] = Dat(double(i) / double(n));
        dmin = std::min(dmin, D[size_t(i)]);
        dmax = std::max(dmax, D[size_t(i)]);
    }
    diag["D_min"] = dmin;
    diag["D_max"] = dmax;

    // candidate zero angles of D: sign changes bisected, near-zero local
    // minima of |D| polished by golden-section
    std::vector<double> crossings, touches;
    auto add_crossing = [&](double a, double b) {
        double fa = Dat(a);
        for (int it = 0; it < 64; ++it) {
            double mid = 0.5 * (a + b);
            double fm = Dat(mid);
            if ((fa < 0) == (fm < 0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        crossings.push_back(0.5 * (a + b));
    };
    for (int64_t i = 0; i < n; ++i) {
        double a = double(i) / double(n), b = double(i + 1) / double(n);
        double va = D[size_t(i)], vb = D[size_t((i + 1) % n)];
        if (std::isfinite(va) && std::isfinite(vb) && (va < 0) != (vb < 0)) add_crossing(a, b);
    }
    for (int64_t i = 0; i < n; ++i) {
        double vm = std::abs(D[size_t(i)]);
        double vl = std::abs(D[size_t((i + n - 1) % n)]), vr = std::abs(D[size_t((i + 1) % n)]);
        if (vm > 1e-2 || vm > vl || vm > vr) continue;
        // local minimize |D|
        double a = double(i - 1) / double(n), b = double(i + 1) / double(n);
        for (int it = 0; it < 80; ++it) {
            double m1 = a + 0.381966 * (b - a), m2 = b - 0.381966 * (b - a);
            if (std::abs(Dat(m1)) < std::abs(Dat(m2)))
                b = m2;
            else
                a = m1;
        }
        double t = 0.5 * (a + b);
        if (std::abs(Dat(t)) < opts.sign_margin * 10) {
            bool dup = false;
            for (double c : crossings)
                if (std::abs(c - t) < 2.0 / double(n)) dup = true;
            if (!dup) touches.push_back(t);
        }
    }
    diag["crossings"] = crossings;
    diag["touches"] = touches;

    // rational probe around every candidate: condition (2) asks for a xi
    // with F(xi) = sum_{j<q} phi(xi zeta^j) = 0
    auto rational_witness = [&](double theta) -> std::optional<Witness> {
        for (int64_t q = 1; q <= opts.rational_q_max; ++q) {
            int64_t p = (int64_t)std::llround(theta * double(q));
            for (int64_t pp : {p, p + 1, p - 1}) {
                int64_t pm = ((pp % q) + q) % q;
                if (std::gcd(pm, q) != 1 && !(pm == 0 && q == 1)) continue;
                double tq = double(pm) / double(q);
                double circ = std::abs(tq - theta);
                circ = std::min(circ, 1.0 - circ);
                if (circ > 4.0 / double(n) + 1e-12) continue;
                cplx zq = unit(tq);
                auto F = [&](double xs) {
                    double acc = 0;
                    cplx at = unit(xs);
                    for (int64_t j = 0; j < q; ++j) {
                        acc += log_abs_eval(g, at, zq) - log_abs_eval(h, at, zq);
                        at *= zq;
                    }
                    return acc;
                };
                double prev = F(0.0);
                for (int64_t i = 1; i <= opts.xi_grid; ++i) {
                    // the closing step evaluates angle 1.0 == 0.0, so a wrap
                    // bracket stays an honest interval
                    double xs = double(i) / double(opts.xi_grid);
                    double cur = F(xs);
                    if (std::isfinite(prev) && std::isfinite(cur) && (prev < 0) != (cur < 0)) {
                        double a = double(i - 1) / double(opts.xi_grid), b = xs;
                        double fa = prev;
                        for (int it = 0; it < 80; ++it) {
                            double mid = 0.5 * (a + b);
                            double fm = F(mid);
                            if ((fa < 0) == (fm < 0)) {
                                a = mid;
                                fa = fm;
                            } else {
                                b = mid;
                            }
                        }
                        return Witness{unit(0.5 * (a + b)), zq, "rational"};
                    }
                    prev = cur;
                }
            }
        }
        return std::nullopt;
    };

    std::vector<double> all_candidates = crossings;
    all_candidates.insert(all_candidates.end(), touches.begin(), touches.end());
    for (double theta : all_candidates) {
        if (auto w = rational_witness(theta)) {
            verdict.status = ExpansivenessVerdict::Status::Nonexpansive;
            verdict.witness = w;
            CocycleTrace tr = bounded_cocycle_scan(g, h, w->zeta, w->xi, 256);
            diag["witness_cocycle_sup"] = tr.sup_above;
            return verdict;
        }
    }
    if (!crossings.empty()) {
        // irrational crossing: the nonvanishing case makes every xi work
        Witness w{cplx(1.0, 0.0), unit(crossings.front()), "irrational-crossing"};
        verdict.status = ExpansivenessVerdict::Status::Nonexpansive;
        verdict.witness = w;
        CocycleTrace tr = bounded_cocycle_scan(g, h, w.zeta, w.xi, 256);
        diag["witness_cocycle_sup"] = tr.sup_above;
        return verdict;
    }
    if (!touches.empty()) {
        diag["reason"] = "D touches zero without crossing and no rational witness was found";
        return verdict;
    }
    if (g_vanishes || h_vanishes) {
        diag["reason"] = "g or h vanishes on the torus within margin";
        diag["vanish_x_re"] = (g_vanishes ? gs : hs).arg_x.real();
        diag["vanish_x_im"] = (g_vanishes ? gs : hs).arg_x.imag();
        diag["vanish_z_re"] = (g_vanishes ? gs : hs).arg_z.real();
        diag["vanish_z_im"] = (g_vanishes ? gs : hs).arg_z.imag();
        return verdict;
    }
    verdict.status = ExpansivenessVerdict::Status::Expansive;
    diag["margin"] = std::min(std::abs(dmin), std::abs(dmax));
    return verdict;
}

AllanReport allan_rational_check(const GroupRingElement& f, int64_t p, int64_t q, int64_t grid_n,
                                 int refine_rounds) {
    if (q < 1) throw std::invalid_argument("allan_rational_check: q >= 1");
    p = ((p % q) + q) % q;
    if (q > 1 && std::gcd(p, q) != 1)
        throw std::invalid_argument("allan_rational_check: gcd(p, q) = 1 required");
    cplx zeta = unit(double(p) / double(q));
    auto d = entropy::x_decompose(f);
    AllanReport rep;
    rep.q = q;
    double bx = 0, be = 0;
    rep.min_abs_det = std::numeric_limits<double>::infinity();
    auto probe = [&](double sx, double se) {
        auto m = entropy::build_a_matrix(d, q, zeta, unit(sx), unit(se));
        auto ld = entropy::log_det(std::move(m));
        double v = std::isfinite(ld.log_abs) ? std::exp(ld.log_abs) : 0.0;
        if (v < rep.min_abs_det) {
            rep.min_abs_det = v;
            bx = sx;
            be = se;
        }
    };
    for (int64_t i = 0; i < grid_n; ++i)
        for (int64_t j = 0; j < grid_n; ++j)
            probe(double(i) / double(grid_n), double(j) / double(grid_n));
    double h = 1.0 / double(grid_n);
    for (int r = 0; r < refine_rounds; ++r) {
        double step = h / 2.0;
        double cx = bx, ce = be;
        for (int di = -2; di <= 2; ++di)
            for (int dj = -2; dj <= 2; ++dj) probe(cx + step * di / 2.0, ce + step * dj / 2.0);
        h = step;
    }
    rep.argmin_xi = unit(bx);
    rep.argmin_eta = unit(be);
    rep.diagnostics["grid_n"] = grid_n;
    rep.diagnostics["refine_rounds"] = refine_rounds;
    return rep;
}

}  // namespace heis::expansive

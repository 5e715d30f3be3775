#include "heis/laurent.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>

namespace heis {

namespace {

mpz_class to_mpz(int128 v) { return mpz_class(to_string(v)); }

int128 from_mpz(const mpz_class& v) { return parse_int128(v.get_str()); }

using ZPoly = std::vector<mpz_class>;  // dense, degree ascending, trimmed

void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class poly_content(const ZPoly& p) {
    mpz_class g = 0;
    for (auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly primitive_part(ZPoly p) {
    mpz_class g = poly_content(p);
    if (g == 0) return {};
    if (!p.empty() && p.back() < 0) g = -g;
    for (auto& c : p) c /= g;
    return p;
}

// remainder of lc(b)^(deg a - deg b + 1) * a modulo b, fraction-free
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
    trim(a);
    if (b.empty()) throw std::invalid_argument("pseudo_rem by zero");
    int db = int(b.size()) - 1;
    const mpz_class& lb = b.back();
    while (int(a.size()) - 1 >= db && !a.empty()) {
        int da = int(a.size()) - 1;
        mpz_class la = a.back();
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; i++) a[size_t(da - db + i)] -= la * b[size_t(i)];
        trim(a);
    }
    return a;
}

ZPoly z_gcd(ZPoly a, ZPoly b) {
    trim(a);
    trim(b);
    mpz_class ca = poly_content(a), cb = poly_content(b);
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = primitive_part(std::move(a));
    b = primitive_part(std::move(b));
    while (!b.empty()) {
        ZPoly r = primitive_part(pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    for (auto& c : a) c *= cg;
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

ZPoly to_zpoly(const LaurentPoly1& p) {
    ZPoly out;
    out.reserve(p.coeffs().size());
    for (auto& c : p.coeffs()) out.push_back(to_mpz(c));
    return out;
}

LaurentPoly1 from_zpoly(const ZPoly& p, int64_t low = 0) {
    std::vector<int128> c;
    c.reserve(p.size());
    for (auto& v : p) c.push_back(from_mpz(v));
    return LaurentPoly1(low, std::move(c));
}

}  // namespace

void LaurentPoly1::normalize() {
    size_t b = 0, e = c_.size();
    while (b < e && c_[b] == 0) ++b;
    while (e > b && c_[e - 1] == 0) --e;
    if (b == e) {
        c_.clear();
        low_ = 0;
        return;
    }
    if (b > 0 || e < c_.size()) {
        std::vector<int128> t(c_.begin() + long(b), c_.begin() + long(e));
        c_ = std::move(t);
        low_ += int64_t(b);
    }
}

std::complex<double> LaurentPoly1::eval(std::complex<double> u) const {
    if (c_.empty()) return 0.0;
    std::complex<double> acc = 0.0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * u + to_double(c_[i]);
    return acc * std::pow(u, double(low_));
}

int128 LaurentPoly1::eval_at_one() const {
    int128 s = 0;
    for (auto& c : c_) s = checked_add(s, c);
    return s;
}

LaurentPoly1 add(const LaurentPoly1& a, const LaurentPoly1& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int64_t low = std::min(a.low_exp(), b.low_exp());
    int64_t high = std::max(a.high_exp(), b.high_exp());
    std::vector<int128> c(size_t(high - low + 1), 0);
    for (int64_t e = a.low_exp(); e <= a.high_exp(); ++e) c[size_t(e - low)] = a.coeff(e);
    for (int64_t e = b.low_exp(); e <= b.high_exp(); ++e)
        c[size_t(e - low)] = checked_add(c[size_t(e - low)], b.coeff(e));
    return LaurentPoly1(low, std::move(c));
}

LaurentPoly1 neg(const LaurentPoly1& a) {
    std::vector<int128> c(a.coeffs());
    for (auto& v : c) v = -v;
    return LaurentPoly1(a.low_exp(), std::move(c));
}

LaurentPoly1 sub(const LaurentPoly1& a, const LaurentPoly1& b) { return add(a, neg(b)); }

LaurentPoly1 mul(const LaurentPoly1& a, const LaurentPoly1& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly1();
    std::vector<int128> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (size_t i = 0; i < a.coeffs().size(); ++i)
        for (size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] = checked_add(c[i + j], checked_mul(a.coeffs()[i], b.coeffs()[j]));
    return LaurentPoly1(checked_add64(a.low_exp(), b.low_exp()), std::move(c));
}

std::optional<LaurentPoly1> divide_exact(const LaurentPoly1& a, const LaurentPoly1& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return LaurentPoly1();
    ZPoly A = to_zpoly(a), B = to_zpoly(b);
    int da = int(A.size()) - 1, db = int(B.size()) - 1;
    if (da < db) return std::nullopt;
    ZPoly Q(size_t(da - db + 1), mpz_class(0));
    for (int t = da - db; t >= 0; --t) {
        mpz_class lead = A[size_t(t + db)];
        if (lead == 0) continue;
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), lead.get_mpz_t(), B.back().get_mpz_t());
        if (r != 0) return std::nullopt;
        Q[size_t(t)] = q;
        for (int i = 0; i <= db; ++i) A[size_t(t + i)] -= q * B[size_t(i)];
    }
    for (auto& c : A)
        if (c != 0) return std::nullopt;
    return from_zpoly(Q, a.low_exp() - b.low_exp());
}

LaurentPoly1 normalize_unit(const LaurentPoly1& a) {
    if (a.is_zero()) return a;
    ZPoly p = primitive_part(to_zpoly(a));
    return from_zpoly(p, 0);
}

LaurentPoly1 gcd(const LaurentPoly1& a, const LaurentPoly1& b) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    ZPoly g = z_gcd(to_zpoly(a), to_zpoly(b));
    return from_zpoly(primitive_part(g), 0);
}

int64_t euler_phi(int64_t n) {
    int64_t result = n;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

LaurentPoly1 cyclotomic(int64_t n) {
    if (n < 1) throw std::invalid_argument("cyclotomic: n >= 1 required");
    static std::map<int64_t, LaurentPoly1> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<int128> un(size_t(n + 1), 0);
    un[0] = -1;
    un[size_t(n)] = 1;
    LaurentPoly1 p(0, std::move(un));
    for (int64_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        auto q = divide_exact(p, cyclotomic(d));
        p = *q;
    }
    cache[n] = p;
    return p;
}

std::optional<int64_t> root_of_unity_root(const LaurentPoly1& g) {
    if (g.is_zero()) throw std::invalid_argument("root_of_unity_root: zero polynomial");
    int64_t D = g.degree_span();
    if (D == 0) return std::nullopt;
    LaurentPoly1 gn = normalize_unit(g);
    // phi(d) >= sqrt(d/2), so phi(d) <= D forces d <= 2 D^2
    for (int64_t d = 1; d <= 2 * D * D; ++d) {
        if (euler_phi(d) > D) continue;
        if (divide_exact(gn, cyclotomic(d))) return d;
    }
    return std::nullopt;
}

// ---------- two variables ----------

LaurentPoly2 add(const LaurentPoly2& a, const LaurentPoly2& b) {
    LaurentPoly2 r = a;
    for (auto& [ij, c] : b.terms()) r.add_term(ij.first, ij.second, c);
    return r;
}

LaurentPoly2 neg(const LaurentPoly2& a) {
    LaurentPoly2 r;
    for (auto& [ij, c] : a.terms()) r.add_term(ij.first, ij.second, -c);
    return r;
}

LaurentPoly2 sub(const LaurentPoly2& a, const LaurentPoly2& b) { return add(a, neg(b)); }

LaurentPoly2 mul(const LaurentPoly2& a, const LaurentPoly2& b) {
    LaurentPoly2 r;
    for (auto& [ij, c] : a.terms())
        for (auto& [kl, d] : b.terms())
            r.add_term(checked_add64(ij.first, kl.first), checked_add64(ij.second, kl.second),
                       checked_mul(c, d));
    return r;
}

std::complex<double> LaurentPoly2::eval(std::complex<double> a, std::complex<double> b) const {
    std::complex<double> s = 0.0;
    for (auto& [ij, c] : terms_)
        s += to_double(c) * std::pow(a, double(ij.first)) * std::pow(b, double(ij.second));
    return s;
}

namespace {

// view as a polynomial in u2 with LaurentPoly1 coefficients in u1
std::map<int64_t, LaurentPoly1> by_second(const LaurentPoly2& p) {
    std::map<int64_t, std::map<int64_t, int128>> rows;
    for (auto& [ij, c] : p.terms()) rows[ij.second][ij.first] = c;
    std::map<int64_t, LaurentPoly1> out;
    for (auto& [j, row] : rows) {
        int64_t low = row.begin()->first, high = row.rbegin()->first;
        std::vector<int128> cs(size_t(high - low + 1), 0);
        for (auto& [i, c] : row) cs[size_t(i - low)] = c;
        out.emplace(j, LaurentPoly1(low, std::move(cs)));
    }
    return out;
}

LaurentPoly2 from_rows(const std::map<int64_t, LaurentPoly1>& rows) {
    LaurentPoly2 p;
    for (auto& [j, poly] : rows)
        for (int64_t e = poly.low_exp(); e <= poly.high_exp(); ++e) p.add_term(e, j, poly.coeff(e));
    return p;
}

}  // namespace

std::optional<LaurentPoly2> divide_exact(const LaurentPoly2& a, const LaurentPoly2& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return LaurentPoly2();
    auto ra = by_second(a);
    auto rb = by_second(b);
    int64_t blow = rb.begin()->first, bhigh = rb.rbegin()->first;
    int64_t alow0 = ra.begin()->first;
    const LaurentPoly1& blead = rb.rbegin()->second;
    std::map<int64_t, LaurentPoly1> q;
    // schoolbook division from the top u2-degree down; exactness makes every
    // leading-coefficient division succeed when b | a, and the quotient's
    // lowest u2-exponent is then alow - blow
    while (!ra.empty()) {
        int64_t ahigh = ra.rbegin()->first;
        int64_t qe = ahigh - bhigh;
        if (qe < alow0 - blow) return std::nullopt;
        auto qc = divide_exact(ra.rbegin()->second, blead);
        if (!qc) return std::nullopt;
        q.emplace(qe, *qc);
        for (auto& [j, poly] : rb) {
            int64_t tj = j + qe;
            LaurentPoly1 prod = mul(*qc, poly);
            auto it = ra.find(tj);
            LaurentPoly1 nw = it == ra.end() ? neg(prod) : sub(it->second, prod);
            if (nw.is_zero()) {
                if (it != ra.end()) ra.erase(it);
            } else {
                ra[tj] = nw;
            }
        }
    }
    return from_rows(q);
}

Slice slice(const LaurentPoly2& p, std::complex<double> zeta) {
    Slice out;
    if (p.is_zero()) return out;
    int64_t low = p.terms().begin()->first.first, high = low;
    for (auto& [ij, c] : p.terms()) {
        low = std::min(low, ij.first);
        high = std::max(high, ij.first);
    }
    out.low = low;
    out.coeffs.assign(size_t(high - low + 1), 0.0);
    for (auto& [ij, c] : p.terms())
        out.coeffs[size_t(ij.first - low)] += to_double(c) * std::pow(zeta, double(ij.second));
    return out;
}

Slice slice_second(const LaurentPoly2& p, std::complex<double> xi) {
    Slice out;
    if (p.is_zero()) return out;
    int64_t low = p.terms().begin()->first.second, high = low;
    for (auto& [ij, c] : p.terms()) {
        low = std::min(low, ij.second);
        high = std::max(high, ij.second);
    }
    out.low = low;
    out.coeffs.assign(size_t(high - low + 1), 0.0);
    for (auto& [ij, c] : p.terms())
        out.coeffs[size_t(ij.second - low)] += to_double(c) * std::pow(xi, double(ij.first));
    return out;
}

LaurentPoly2 generalized_cyclotomic(int64_t k, int64_t n1, int64_t n2) {
    if (n1 == 0 && n2 == 0) throw std::invalid_argument("generalized cyclotomic: direction 0");
    LaurentPoly1 phi = cyclotomic(k);
    LaurentPoly2 p;
    for (int64_t e = phi.low_exp(); e <= phi.high_exp(); ++e)
        p.add_term(checked_mul64(e, n1), checked_mul64(e, n2), phi.coeff(e));
    return p;
}

std::optional<GenCycloHit> generalized_cyclotomic_divisor(const LaurentPoly2& f, int64_t k_max,
                                                          int64_t n_max) {
    if (f.is_zero()) return std::nullopt;
    auto try_dir = [&](int64_t k, int64_t n1, int64_t n2) -> bool {
        return divide_exact(f, generalized_cyclotomic(k, n1, n2)).has_value();
    };
    for (int64_t k = 1; k <= k_max; ++k) {
        for (int64_t n2 = 1; n2 <= n_max; ++n2)
            if (try_dir(k, 0, n2)) return GenCycloHit{k, 0, n2};
        for (int64_t n1 = 1; n1 <= n_max; ++n1) {
            if (try_dir(k, n1, 0)) return GenCycloHit{k, n1, 0};
            for (int64_t a = 1; a <= n_max; ++a) {
                if (try_dir(k, n1, a)) return GenCycloHit{k, n1, a};
                if (try_dir(k, n1, -a)) return GenCycloHit{k, n1, -a};
            }
        }
    }
    return std::nullopt;
}

// ---------- exact expansiveness decision over Z ----------

namespace {

using QPoly = std::vector<mpq_class>;  // dense, degree ascending, trimmed

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qderiv(const QPoly& p) {
    QPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * mpq_class(long(i)));
    qtrim(d);
    return d;
}

// exact remainder in Q[u], then rescaled to a primitive integer polynomial
// by a positive rational (keeps every sign in the Sturm chain intact)
QPoly qrem_primitive(QPoly a, const QPoly& b) {
    int db = int(b.size()) - 1;
    while (int(a.size()) - 1 >= db) {
        mpq_class q = a.back() / b.back();
        int shift = int(a.size()) - 1 - db;
        for (int i = 0; i <= db; ++i) a[size_t(shift + i)] -= q * b[size_t(i)];
        qtrim(a);
        if (a.empty()) break;
    }
    if (a.empty()) return a;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (auto& c : a) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    mpq_class scale(den_lcm, num_gcd);  // positive
    for (auto& c : a) {
        c *= scale;
        c.canonicalize();
    }
    return a;
}

int qsign_at(const QPoly& p, long x) {
    mpq_class acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return sgn(acc);
}

int sign_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

// distinct real roots in the open interval (a, b); requires p(a), p(b) != 0
int sturm_count_open(QPoly p, long a, long b) {
    qtrim(p);
    if (p.size() <= 1) return 0;
    // squarefree part
    {
        ZPoly zp;
        mpz_class den = 1;
        for (auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        for (auto& c : p) zp.push_back(mpz_class(c * den));
        ZPoly dz;
        for (size_t i = 1; i < zp.size(); ++i) dz.push_back(zp[i] * long(i));
        ZPoly g = z_gcd(zp, dz);
        if (g.size() > 1) {
            // divide zp by g exactly
            ZPoly quo(zp.size() - g.size() + 1, mpz_class(0));
            ZPoly rem = zp;
            for (int t = int(rem.size()) - int(g.size()); t >= 0; --t) {
                mpz_class q = rem[size_t(t) + g.size() - 1] / g.back();
                quo[size_t(t)] = q;
                for (size_t i = 0; i < g.size(); ++i) rem[size_t(t) + i] -= q * g[i];
                while (!rem.empty() && rem.back() == 0) rem.pop_back();
            }
            p.clear();
            for (auto& c : quo) p.push_back(mpq_class(c));
            qtrim(p);
            if (p.size() <= 1) return 0;
        }
    }
    std::vector<QPoly> chain;
    chain.push_back(p);
    chain.push_back(qderiv(p));
    while (!chain.back().empty() && chain.back().size() > 1) {
        QPoly r = qrem_primitive(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    std::vector<int> sa, sb;
    for (auto& q : chain) {
        if (q.empty()) continue;
        sa.push_back(qsign_at(q, a));
        sb.push_back(qsign_at(q, b));
    }
    return sign_variations(sa) - sign_variations(sb);
}

}  // namespace

int sturm_root_count(const std::vector<int128>& poly, int a, int b) {
    QPoly p;
    for (auto& c : poly) p.push_back(mpq_class(to_mpz(c)));
    qtrim(p);
    if (p.empty()) throw std::invalid_argument("sturm_root_count: zero polynomial");
    return sturm_count_open(p, a, b);
}

bool sturm_expansive(const LaurentPoly1& f) {
    if (f.is_zero()) throw std::invalid_argument("sturm_expansive: zero polynomial");
    if (f.is_monomial()) return true;  // unit, no zeros at all
    // roots at u = +-1 are on the circle
    if (f.eval_at_one() == 0) return false;
    {
        int128 s = 0;
        for (int64_t e = f.low_exp(); e <= f.high_exp(); ++e)
            s = checked_add(s, (e % 2 == 0) ? f.coeff(e) : -f.coeff(e));
        if (s == 0) return false;
    }
    // g = gcd(f, reciprocal of f) catches every unimodular root
    std::vector<int128> rev(f.coeffs().rbegin(), f.coeffs().rend());
    LaurentPoly1 frev(0, std::move(rev));
    LaurentPoly1 g = gcd(f, frev);
    int64_t e = g.degree_span();
    if (e == 0) return true;
    // g is palindromic or antipalindromic; the antipalindromic and odd cases
    // force a root at u = 1 or u = -1, excluded above
    bool pal = true, anti = true;
    for (int64_t i = 0; i <= e; ++i) {
        if (g.coeff(g.low_exp() + i) != g.coeff(g.low_exp() + e - i)) pal = false;
        if (g.coeff(g.low_exp() + i) != -g.coeff(g.low_exp() + e - i)) anti = false;
    }
    if (!pal) {
        if (anti) return false;
        throw std::logic_error("sturm_expansive: reciprocal gcd is not (anti)palindromic");
    }
    if (e % 2 == 1) return false;
    // write g(u) = u^{e/2} h(u + 1/u) via the Chebyshev-like basis
    // P_0 = 2, P_1 = w, P_k = w P_{k-1} - P_{k-2}
    int64_t half = e / 2;
    std::vector<std::vector<int128>> P;
    P.push_back({2});
    P.push_back({0, 1});
    for (int64_t k = 2; k <= half; ++k) {
        std::vector<int128> nk(P[size_t(k - 1)].size() + 1, 0);
        for (size_t i = 0; i < P[size_t(k - 1)].size(); ++i)
            nk[i + 1] = checked_add(nk[i + 1], P[size_t(k - 1)][i]);
        for (size_t i = 0; i < P[size_t(k - 2)].size(); ++i)
            nk[i] = checked_sub(nk[i], P[size_t(k - 2)][i]);
        P.push_back(std::move(nk));
    }
    std::vector<int128> h(size_t(half + 1), 0);
    h[0] = g.coeff(g.low_exp() + half);
    for (int64_t k = 1; k <= half; ++k) {
        int128 ck = g.coeff(g.low_exp() + half + k);
        for (size_t i = 0; i < P[size_t(k)].size(); ++i)
            h[i] = checked_add(h[i], checked_mul(ck, P[size_t(k)][i]));
    }
    // roots of g on the circle away from +-1 <-> roots of h in (-2, 2)
    return sturm_root_count(h, -2, 2) == 0;
}

std::string to_string(const LaurentPoly1& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string s;
    for (int64_t e = p.low_exp(); e <= p.high_exp(); ++e) {
        int128 c = p.coeff(e);
        if (c == 0) continue;
        int128 a = abs128(c);
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? "-" : "+";
        }
        if (e == 0) {
            s += to_string(a);
        } else {
            if (a != 1) s += to_string(a) + "*";
            s += var;
            if (e != 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

std::string to_string(const LaurentPoly2& p, const std::string& v1, const std::string& v2) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto& [ij, c] : p.terms()) {
        int128 a = abs128(c);
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? "-" : "+";
        }
        std::string mono;
        auto app = [&mono](const std::string& v, int64_t e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += v;
            if (e != 1) mono += "^" + std::to_string(e);
        };
        app(v1, ij.first);
        app(v2, ij.second);
        if (mono.empty()) {
            s += to_string(a);
        } else {
            if (a != 1) s += to_string(a) + "*";
            s += mono;
        }
    }
    return s;
}

}  // namespace heis

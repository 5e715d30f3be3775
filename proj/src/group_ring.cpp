#include "heis/group_ring.hpp"

#include <algorithm>

#include "heis/laurent.hpp"

namespace heis {

GroupRingElement add(const GroupRingElement& f, const GroupRingElement& g) {
    GroupRingElement r = f;
    for (auto& [m, c] : g.terms()) r.add_term(m, c);
    return r;
}

GroupRingElement sub(const GroupRingElement& f, const GroupRingElement& g) {
    GroupRingElement r = f;
    for (auto& [m, c] : g.terms()) r.add_term(m, -c);
    return r;
}

GroupRingElement neg(const GroupRingElement& f) {
    GroupRingElement r;
    for (auto& [m, c] : f.terms()) r.add_term(m, -c);
    return r;
}

GroupRingElement mul(const GroupRingElement& f, const GroupRingElement& g) {
    GroupRingElement r;
    for (auto& [mf, cf] : f.terms())
        for (auto& [mg, cg] : g.terms()) r.add_term(mul(mf, mg), checked_mul(cf, cg));
    return r;
}

GroupRingElement mul(const GroupRingElement& f, int128 c) {
    GroupRingElement r;
    if (c == 0) return r;
    for (auto& [m, cf] : f.terms()) r.add_term(m, checked_mul(cf, c));
    return r;
}

GroupRingElement star(const GroupRingElement& f) {
    GroupRingElement r;
    for (auto& [m, c] : f.terms()) r.add_term(inverse(m), c);
    return r;
}

GroupRingElement pow(const GroupRingElement& f, int64_t n) {
    if (n < 0) throw std::invalid_argument("pow: negative exponent on a ring element");
    GroupRingElement acc = GroupRingElement::one();
    GroupRingElement base = f;
    while (n > 0) {
        if (n & 1) acc = mul(acc, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return acc;
}

namespace {

int128 cross(const std::pair<int64_t, int64_t>& o, const std::pair<int64_t, int64_t>& a,
             const std::pair<int64_t, int64_t>& b) {
    int128 ax = (int128)a.first - o.first, ay = (int128)a.second - o.second;
    int128 bx = (int128)b.first - o.first, by = (int128)b.second - o.second;
    return ax * by - ay * bx;
}

// Andrew monotone chain; strict turns only, so edge-interior points drop out.
std::vector<std::pair<int64_t, int64_t>> hull(std::vector<std::pair<int64_t, int64_t>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<std::pair<int64_t, int64_t>> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; i++) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
        h[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

NewtonPolygon newton_polygon(const GroupRingElement& f) {
    std::vector<std::pair<int64_t, int64_t>> pts;
    for (auto& [m, c] : f.terms()) pts.emplace_back(m.k, m.l);
    NewtonPolygon np;
    np.vertices = hull(std::move(pts));
    return np;
}

NewtonPolygon minkowski_sum(const NewtonPolygon& a, const NewtonPolygon& b) {
    std::vector<std::pair<int64_t, int64_t>> pts;
    for (auto& p : a.vertices)
        for (auto& q : b.vertices)
            pts.emplace_back(checked_add64(p.first, q.first), checked_add64(p.second, q.second));
    NewtonPolygon np;
    np.vertices = hull(std::move(pts));
    return np;
}

Monomial apply(const GroupAutomorphism& phi, const Monomial& m) {
    Monomial px = pow(Monomial{phi.a, phi.b, phi.r}, m.k);
    Monomial py = pow(Monomial{phi.c, phi.d, phi.s}, m.l);
    Monomial pz = pow(Monomial{0, 0, phi.det()}, m.m);
    return mul(mul(px, py), pz);
}

GroupRingElement apply(const GroupAutomorphism& phi, const GroupRingElement& f) {
    if (!phi.valid()) throw std::invalid_argument("automorphism requires ad - bc = +-1");
    GroupRingElement r;
    for (auto& [m, c] : f.terms()) r.add_term(apply(phi, m), c);
    return r;
}

LaurentPoly2 abelianize(const GroupRingElement& f) {
    LaurentPoly2 p;
    for (auto& [m, c] : f.terms()) p.add_term(m.k, m.l, c);
    return p;
}

std::map<std::pair<int64_t, int64_t>, LaurentPoly1> z_coefficients(const GroupRingElement& f) {
    std::map<std::pair<int64_t, int64_t>, std::map<int64_t, int128>> raw;
    for (auto& [m, c] : f.terms()) raw[{m.k, m.l}][m.m] = c;
    std::map<std::pair<int64_t, int64_t>, LaurentPoly1> out;
    for (auto& [kl, mp] : raw) {
        int64_t low = mp.begin()->first;
        int64_t high = mp.rbegin()->first;
        std::vector<int128> cs(size_t(high - low + 1), 0);
        for (auto& [e, c] : mp) cs[size_t(e - low)] = c;
        out.emplace(kl, LaurentPoly1(low, std::move(cs)));
    }
    return out;
}

LaurentPoly1 content(const GroupRingElement& f) {
    if (f.is_zero()) return LaurentPoly1();
    LaurentPoly1 g;
    for (auto& [kl, p] : z_coefficients(f)) {
        g = g.is_zero() ? p : gcd(g, p);
        if (g.is_one()) break;
    }
    return normalize_unit(g);
}

std::vector<LaurentPoly1> q_binomial_expand(int64_t n) {
    if (n < 1) throw std::invalid_argument("q_binomial_expand: n >= 1 required");
    GroupRingElement xy = add(GroupRingElement::x(), GroupRingElement::y());
    auto coeffs = z_coefficients(pow(xy, n));
    std::vector<LaurentPoly1> out;
    out.reserve(size_t(n + 1));
    for (int64_t k = 0; k <= n; ++k) {
        auto it = coeffs.find({k, n - k});
        out.push_back(it == coeffs.end() ? LaurentPoly1() : it->second);
    }
    return out;
}

std::string to_string(const Monomial& m) {
    if (m.is_identity()) return "1";
    std::string s;
    auto app = [&s](const char* v, int64_t e) {
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += v;
        if (e != 1) s += "^" + std::to_string(e);
    };
    app("x", m.k);
    app("y", m.l);
    app("z", m.m);
    return s;
}

std::string to_string(const GroupRingElement& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (auto& [m, c] : f.terms()) {
        int128 a = abs128(c);
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? "-" : "+";
        }
        if (m.is_identity()) {
            s += to_string(a);
        } else {
            if (a != 1) s += to_string(a) + "*";
            s += to_string(m);
        }
    }
    return s;
}

}  // namespace heis

#pragma once

#include <compare>
#include <cstdint>

#include "heis/ints.hpp"

namespace heis {

// Normal form x^k y^l z^m of a group element. The group law is generated by
// x z = z x, y z = z y and y x = x y z, which forces
//   (x^a y^b z^c)(x^d y^e z^f) = x^{a+d} y^{b+e} z^{c+f+bd}.
struct Monomial {
    int64_t k = 0;  // x exponent
    int64_t l = 0;  // y exponent
    int64_t m = 0;  // z exponent

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    bool is_identity() const { return k == 0 && l == 0 && m == 0; }
};

inline Monomial mul(const Monomial& p, const Monomial& q) {
    Monomial r;
    r.k = checked_add64(p.k, q.k);
    r.l = checked_add64(p.l, q.l);
    r.m = checked_add64(checked_add64(p.m, q.m), checked_mul64(p.l, q.k));
    return r;
}

// (x^k y^l z^m)^{-1} = x^{-k} y^{-l} z^{lk-m}
inline Monomial inverse(const Monomial& p) {
    int64_t lk = checked_mul64(p.l, p.k);
    int64_t m;
    if (__builtin_sub_overflow(lk, p.m, &m)) throw overflow_error("monomial inverse overflow");
    return Monomial{-p.k, -p.l, m};
}

// (x^a y^b z^c)^n = x^{an} y^{bn} z^{cn + ab n(n-1)/2}, any n.
Monomial pow(const Monomial& p, int64_t n);

inline Monomial x_gen() { return Monomial{1, 0, 0}; }
inline Monomial y_gen() { return Monomial{0, 1, 0}; }
inline Monomial z_gen() { return Monomial{0, 0, 1}; }

}  // namespace heis

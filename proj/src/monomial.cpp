#include "heis/monomial.hpp"

namespace heis {

Monomial pow(const Monomial& p, int64_t n) {
    if (n == 0) return Monomial{};
    Monomial base = p;
    if (n < 0) {
        base = inverse(p);
        n = -n;
    }
    // closed form: (x^a y^b z^c)^n = x^{an} y^{bn} z^{cn + ab n(n-1)/2}
    int64_t an = checked_mul64(base.k, n);
    int64_t bn = checked_mul64(base.l, n);
    int64_t half = (n % 2 == 0) ? checked_mul64(n / 2, n - 1) : checked_mul64(n, (n - 1) / 2);
    int64_t tw = checked_mul64(checked_mul64(base.k, base.l), half);
    int64_t m = checked_add64(checked_mul64(base.m, n), tw);
    return Monomial{an, bn, m};
}

}  // namespace heis

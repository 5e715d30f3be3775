#include "heis/sqrt5.hpp"

#include <stdexcept>

namespace heis::numeric {

Sqrt5 Sqrt5::inverse() const {
    mpq_class n = norm();
    if (n == 0) throw std::invalid_argument("Sqrt5: inverse of zero");
    return Sqrt5(a / n, -b / n);
}

PolyQ5 poly_mul(const PolyQ5& p, const PolyQ5& q) {
    if (p.empty() || q.empty()) return {};
    PolyQ5 r(p.size() + q.size() - 1);
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = 0; j < q.size(); ++j) r[i + j] = r[i + j] + p[i] * q[j];
    return r;
}

PolyQ5 poly_conj(const PolyQ5& p) {
    PolyQ5 r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = p[i].conj();
    return r;
}

}  // namespace heis::numeric

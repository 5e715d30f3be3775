#pragma once

#include <gmpxx.h>

#include <vector>

namespace heis::numeric {

// Exact arithmetic in Q(sqrt 5): a + b*sqrt5 with rational a, b.
struct Sqrt5 {
    mpq_class a = 0, b = 0;

    Sqrt5() = default;
    Sqrt5(mpq_class a_, mpq_class b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit Sqrt5(long v) : a(v), b(0) {}

    static Sqrt5 tau() { return Sqrt5(mpq_class(1, 2), mpq_class(1, 2)); }    // (1+sqrt5)/2
    static Sqrt5 sigma() { return Sqrt5(mpq_class(1, 2), mpq_class(-1, 2)); } // (1-sqrt5)/2

    Sqrt5 conj() const { return Sqrt5(a, -b); }
    mpq_class norm() const { return a * a - 5 * b * b; }
    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    double to_double() const { return a.get_d() + b.get_d() * 2.2360679774997896964; }

    friend Sqrt5 operator+(const Sqrt5& x, const Sqrt5& y) { return {x.a + y.a, x.b + y.b}; }
    friend Sqrt5 operator-(const Sqrt5& x, const Sqrt5& y) { return {x.a - y.a, x.b - y.b}; }
    friend Sqrt5 operator-(const Sqrt5& x) { return {-x.a, -x.b}; }
    friend Sqrt5 operator*(const Sqrt5& x, const Sqrt5& y) {
        return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend bool operator==(const Sqrt5& x, const Sqrt5& y) { return x.a == y.a && x.b == y.b; }

    Sqrt5 inverse() const;
};

// Dense polynomial over Q(sqrt5), degree ascending.
using PolyQ5 = std::vector<Sqrt5>;

PolyQ5 poly_mul(const PolyQ5& p, const PolyQ5& q);
PolyQ5 poly_conj(const PolyQ5& p);

}  // namespace heis::numeric

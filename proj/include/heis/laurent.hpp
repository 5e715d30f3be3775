#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heis/ints.hpp"

namespace heis {

// Integer Laurent polynomial in one variable: dense coefficients from
// low_exp upward. First and last stored coefficients are nonzero unless the
// polynomial is zero (empty coefficient list, low_exp 0).
class LaurentPoly1 {
public:
    LaurentPoly1() = default;
    LaurentPoly1(int64_t low, std::vector<int128> coeffs) : low_(low), c_(std::move(coeffs)) {
        normalize();
    }
    explicit LaurentPoly1(int128 c) : LaurentPoly1(0, {c}) {}

    static LaurentPoly1 monomial(int64_t e, int128 c = 1) { return LaurentPoly1(e, {c}); }

    bool is_zero() const { return c_.empty(); }
    int64_t low_exp() const { return low_; }
    int64_t high_exp() const { return low_ + (int64_t)c_.size() - 1; }
    // Newton-polygon length; 0 for monomials and for the zero polynomial.
    int64_t degree_span() const { return c_.empty() ? 0 : (int64_t)c_.size() - 1; }
    const std::vector<int128>& coeffs() const { return c_; }
    int128 coeff(int64_t e) const {
        if (c_.empty() || e < low_ || e > high_exp()) return 0;
        return c_[size_t(e - low_)];
    }
    int128 leading() const { return c_.empty() ? 0 : c_.back(); }
    int128 trailing() const { return c_.empty() ? 0 : c_.front(); }

    bool is_monomial() const { return c_.size() == 1; }
    bool is_one() const { return low_ == 0 && c_.size() == 1 && c_[0] == 1; }

    std::complex<double> eval(std::complex<double> u) const;
    int128 eval_at_one() const;

    friend bool operator==(const LaurentPoly1&, const LaurentPoly1&) = default;

private:
    void normalize();
    int64_t low_ = 0;
    std::vector<int128> c_;
};

LaurentPoly1 add(const LaurentPoly1& a, const LaurentPoly1& b);
LaurentPoly1 sub(const LaurentPoly1& a, const LaurentPoly1& b);
LaurentPoly1 neg(const LaurentPoly1& a);
LaurentPoly1 mul(const LaurentPoly1& a, const LaurentPoly1& b);
inline LaurentPoly1 operator+(const LaurentPoly1& a, const LaurentPoly1& b) { return add(a, b); }
inline LaurentPoly1 operator-(const LaurentPoly1& a, const LaurentPoly1& b) { return sub(a, b); }
inline LaurentPoly1 operator*(const LaurentPoly1& a, const LaurentPoly1& b) { return mul(a, b); }

// Exact division; nullopt if b does not divide a in Z[u^{+-}].
std::optional<LaurentPoly1> divide_exact(const LaurentPoly1& a, const LaurentPoly1& b);

// gcd in Z[u^{+-}], normalized primitive with nonzero constant term and
// positive leading coefficient.
LaurentPoly1 gcd(const LaurentPoly1& a, const LaurentPoly1& b);

// Normalization used for contents and gcds: strip the monomial factor, make
// primitive, make the leading coefficient positive.
LaurentPoly1 normalize_unit(const LaurentPoly1& a);

// n-th cyclotomic polynomial, monic of degree phi(n).
LaurentPoly1 cyclotomic(int64_t n);

int64_t euler_phi(int64_t n);

// Does some cyclotomic Phi_d divide g? Searches every d with phi(d) <= deg g
// (d <= 2 deg^2 suffices); returns the smallest such d.
std::optional<int64_t> root_of_unity_root(const LaurentPoly1& g);

// Integer Laurent polynomial in two commuting variables, sparse.
class LaurentPoly2 {
public:
    using TermMap = std::map<std::pair<int64_t, int64_t>, int128>;

    LaurentPoly2() = default;
    explicit LaurentPoly2(int128 c) {
        if (c != 0) terms_[{0, 0}] = c;
    }

    static LaurentPoly2 monomial(int64_t i, int64_t j, int128 c = 1) {
        LaurentPoly2 p;
        if (c != 0) p.terms_[{i, j}] = c;
        return p;
    }
    static LaurentPoly2 u1() { return monomial(1, 0); }
    static LaurentPoly2 u2() { return monomial(0, 1); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int128 coeff(int64_t i, int64_t j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? 0 : it->second;
    }
    void add_term(int64_t i, int64_t j, int128 c) {
        if (c == 0) return;
        auto [it, ins] = terms_.emplace(std::make_pair(i, j), c);
        if (!ins) {
            it->second = checked_add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    // true iff the support is a single monomial with coefficient +-1.
    bool is_unit_monomial() const {
        return terms_.size() == 1 && abs128(terms_.begin()->second) == 1;
    }

    std::complex<double> eval(std::complex<double> a, std::complex<double> b) const;

    friend bool operator==(const LaurentPoly2&, const LaurentPoly2&) = default;

private:
    TermMap terms_;
};

LaurentPoly2 add(const LaurentPoly2& a, const LaurentPoly2& b);
LaurentPoly2 sub(const LaurentPoly2& a, const LaurentPoly2& b);
LaurentPoly2 neg(const LaurentPoly2& a);
LaurentPoly2 mul(const LaurentPoly2& a, const LaurentPoly2& b);
inline LaurentPoly2 operator+(const LaurentPoly2& a, const LaurentPoly2& b) { return add(a, b); }
inline LaurentPoly2 operator-(const LaurentPoly2& a, const LaurentPoly2& b) { return sub(a, b); }
inline LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) { return mul(a, b); }

std::optional<LaurentPoly2> divide_exact(const LaurentPoly2& a, const LaurentPoly2& b);

// Coefficients of sum_i (sum_j p_{ij} zeta^j) u1^i: the univariate slice at
// u2 = zeta. Returns the lowest u1-exponent and the dense coefficient list.
struct Slice {
    int64_t low = 0;
    std::vector<std::complex<double>> coeffs;
};
Slice slice(const LaurentPoly2& p, std::complex<double> zeta);
// Slice in the other variable (u1 = xi fixed).
Slice slice_second(const LaurentPoly2& p, std::complex<double> xi);

// Generalized cyclotomic polynomial Phi_k(u1^{n1} u2^{n2}).
LaurentPoly2 generalized_cyclotomic(int64_t k, int64_t n1, int64_t n2);

// Bounded search for a generalized cyclotomic divisor. Scans k = 1..k_max
// and directions |n1|,|n2| <= n_max in a fixed order; a miss means only
// "none within bounds".
struct GenCycloHit {
    int64_t k, n1, n2;
};
std::optional<GenCycloHit> generalized_cyclotomic_divisor(const LaurentPoly2& f, int64_t k_max,
                                                          int64_t n_max);

// Exact decision: does f have no zero on the unit circle? Entirely rational
// arithmetic (gcd with the reciprocal, parity checks, the u + 1/u
// substitution and a Sturm count on [-2,2]).
bool sturm_expansive(const LaurentPoly1& f);

// Number of distinct real roots of the integer polynomial (dense, degree
// ascending) in the open interval (a, b); exact.
int sturm_root_count(const std::vector<int128>& poly, int a, int b);

std::string to_string(const LaurentPoly1& p, const std::string& var = "z");
std::string to_string(const LaurentPoly2& p, const std::string& v1 = "u1",
                      const std::string& v2 = "u2");

}  // namespace heis

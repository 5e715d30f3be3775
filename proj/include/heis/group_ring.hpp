#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heis/ints.hpp"
#include "heis/monomial.hpp"

namespace heis {

class LaurentPoly1;
class LaurentPoly2;

// Element of the integral group ring: a finite integer combination of
// normal-form monomials. No zero coefficients are ever stored, so equality
// is coefficient-wise map equality.
class GroupRingElement {
public:
    using TermMap = std::map<Monomial, int128>;

    GroupRingElement() = default;
    explicit GroupRingElement(int128 c) {
        if (c != 0) terms_[Monomial{}] = c;
    }
    GroupRingElement(const Monomial& mon, int128 c) {
        if (c != 0) terms_[mon] = c;
    }

    static GroupRingElement one() { return GroupRingElement(1); }
    static GroupRingElement monomial(const Monomial& m) { return GroupRingElement(m, 1); }
    static GroupRingElement x() { return monomial(x_gen()); }
    static GroupRingElement y() { return monomial(y_gen()); }
    static GroupRingElement z() { return monomial(z_gen()); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    int128 coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }
    int128 constant_term() const { return coeff(Monomial{}); }

    int128 l1_norm() const {
        int128 s = 0;
        for (auto& [m, c] : terms_) s = checked_add(s, abs128(c));
        return s;
    }

    void add_term(const Monomial& m, int128 c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second = checked_add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

private:
    TermMap terms_;
};

GroupRingElement add(const GroupRingElement& f, const GroupRingElement& g);
GroupRingElement sub(const GroupRingElement& f, const GroupRingElement& g);
GroupRingElement neg(const GroupRingElement& f);
GroupRingElement mul(const GroupRingElement& f, const GroupRingElement& g);
GroupRingElement mul(const GroupRingElement& f, int128 c);

// f* = sum f_delta delta^{-1}: isometric anti-automorphism.
GroupRingElement star(const GroupRingElement& f);

// f^n for n >= 0, by repeated squaring.
GroupRingElement pow(const GroupRingElement& f, int64_t n);

inline GroupRingElement operator+(const GroupRingElement& f, const GroupRingElement& g) { return add(f, g); }
inline GroupRingElement operator-(const GroupRingElement& f, const GroupRingElement& g) { return sub(f, g); }
inline GroupRingElement operator-(const GroupRingElement& f) { return neg(f); }
inline GroupRingElement operator*(const GroupRingElement& f, const GroupRingElement& g) { return mul(f, g); }

// Integer convex hull of the (k,l)-support, counterclockwise, starting from
// the lexicographically smallest vertex. Strictly convex: collinear interior
// points of an edge are not vertices. Empty for the zero element.
struct NewtonPolygon {
    std::vector<std::pair<int64_t, int64_t>> vertices;
    friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

NewtonPolygon newton_polygon(const GroupRingElement& f);
NewtonPolygon minkowski_sum(const NewtonPolygon& a, const NewtonPolygon& b);

// Automorphism x -> x^a y^b z^r, y -> x^c y^d z^s, z -> z^{ad-bc},
// valid iff ad - bc = +-1.
struct GroupAutomorphism {
    int64_t a = 1, b = 0, c = 0, d = 1, r = 0, s = 0;
    int64_t det() const {
        return checked_mul64(a, d) - checked_mul64(b, c);
    }
    bool valid() const { return det() == 1 || det() == -1; }
};

// The x <-> y swap with z -> z^{-1}; used to move between the "linear in y"
// and "linear in x" normal forms.
inline GroupAutomorphism swap_xy() { return GroupAutomorphism{0, 1, 1, 0, 0, 0}; }

Monomial apply(const GroupAutomorphism& phi, const Monomial& m);
GroupRingElement apply(const GroupAutomorphism& phi, const GroupRingElement& f);

// Ring homomorphism onto commuting variables: x -> u1, y -> u2, z -> 1.
LaurentPoly2 abelianize(const GroupRingElement& f);

// gcd over Z[z^{+-}] of the coefficient polynomials g_{kl}(z), normalized to
// a primitive polynomial with nonzero constant term and positive leading
// coefficient; content(0) = 0.
LaurentPoly1 content(const GroupRingElement& f);

// Decomposition f = sum_{k,l} g_{kl}(z) x^k y^l.
std::map<std::pair<int64_t, int64_t>, LaurentPoly1> z_coefficients(const GroupRingElement& f);

// Coefficients [n k]_z with pow(x+y, n) = sum_k [n k]_z x^k y^{n-k}.
std::vector<LaurentPoly1> q_binomial_expand(int64_t n);

// Canonical text form, terms sorted by (k,l,m); round-trips through the parser.
std::string to_string(const GroupRingElement& f);
std::string to_string(const Monomial& m);

}  // namespace heis

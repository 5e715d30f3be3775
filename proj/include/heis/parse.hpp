#pragma once

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "heis/group_ring.hpp"
#include "heis/laurent.hpp"

namespace heis {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    size_t position() const { return pos_; }

private:
    size_t pos_;
};

// Noncommutative mode: variables x, y, z; products evaluate left to right
// through the group ring. `x^-1` is the inverse monomial; unary minus binds
// looser than ^.
GroupRingElement parse_group_ring(const std::string& text);

// Commutative mode: named variables (e.g. {"u"} or {"u1","u2"}), exponents
// may be negative.
LaurentPoly1 parse_laurent1(const std::string& text, const std::string& var = "u");
LaurentPoly2 parse_laurent2(const std::string& text, const std::string& v1 = "u1",
                            const std::string& v2 = "u2");

// Accepts any subset of {x,z} or {y,z} style two-variable input as well.
LaurentPoly2 parse_laurent2_vars(const std::string& text, const std::vector<std::string>& vars);

}  // namespace heis

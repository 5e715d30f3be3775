#pragma once

#include "heis/monomial.hpp"

namespace heis {

// Word norm |.|_S for S = {x,x^{-1},y,y^{-1},z,z^{-1}}, by breadth-first
// search from the identity (cached). Supports the small elements that occur
// in a polynomial's support; throws past radius `max_radius`.
int64_t word_norm(const Monomial& m, int max_radius = 24);

}  // namespace heis

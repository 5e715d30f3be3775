#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "heis/laurent.hpp"
#include "heis/roots.hpp"

namespace heis::numeric {

struct MahlerValue {
    double log_value = 0.0;
    double error_bound = 0.0;  // heuristic except where noted
    enum class Method { ExactRoots, Quadrature } method = Method::ExactRoots;
    // nonvanishing diagnostics: slices whose roots come within 1e-6 of the
    // unit circle are flagged, never silently clipped
    int flagged_slices = 0;
};

struct QuadratureGrid {
    int64_t n = 256;         // points per circle, >= 4
    int dims = 1;            // 1..3
    int64_t chunk = 4096;    // deterministic reduction chunk
    bool parallel = true;
};

// Jensen formula from the computed roots: m(f) = log|c_n| + sum log^+ |root|.
MahlerValue mahler1(const std::vector<cplx>& coeffs);
MahlerValue mahler1(const LaurentPoly1& f);

// Uniform (trapezoid = mean) quadrature over the d-torus, deterministic
// chunked reduction, error heuristic from comparison with the half grid.
struct QuadResult {
    double value = 0.0;
    double error_heuristic = 0.0;
};
QuadResult torus_quad(const std::function<double(const double*)>& fn, const QuadratureGrid& grid);

// d <= 3 commuting variables: the innermost variable (u1) is integrated
// exactly by mahler1 on slices, outer dimensions by torus_quad.
// exps: term exponent vectors, coefficient per term.
struct MultiPoly {
    int dims = 1;
    std::vector<std::array<int64_t, 3>> exps;
    std::vector<double> coeffs;
    static MultiPoly from1(const LaurentPoly1& p);
    static MultiPoly from2(const LaurentPoly2& p);
};
MahlerValue mahlerN(const MultiPoly& f, const QuadratureGrid& grid);
MahlerValue mahlerN(const LaurentPoly2& f, const QuadratureGrid& grid);

inline cplx unit(double angle01) {
    return cplx(std::cos(2.0 * M_PI * angle01), std::sin(2.0 * M_PI * angle01));
}

}  // namespace heis::numeric

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "heis/mahler.hpp"
#include "heis/parse.hpp"
#include "heis/rng.hpp"
#include "heis/roots.hpp"
#include "heis/sqrt5.hpp"

using namespace heis;
using namespace heis::numeric;

namespace {

const double TAU = (1.0 + std::sqrt(5.0)) / 2.0;

// independent oracle: adaptive Simpson, nothing shared with torus_quad
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate01(const std::function<double(double)>& f, double tol) {
    double fa = f(0.0), fb = f(1.0), fm = f(0.5);
    double whole = (fa + 4.0 * fm + fb) / 6.0;
    return adaptive_simpson(f, 0.0, 1.0, fa, fm, fb, whole, tol, 22);
}

}  // namespace

TEST_CASE("poly_roots on the reference polynomials") {
    auto rr = poly_roots({-1.0, -1.0, 1.0});  // u^2 - u - 1
    REQUIRE(rr.roots.size() == 2);
    CHECK(std::abs(rr.roots[0] - cplx(1.0 - TAU, 0.0)) < 1e-12);
    CHECK(std::abs(rr.roots[1] - cplx(TAU, 0.0)) < 1e-12);
    CHECK(rr.max_backward_error <= 1e-12);

    auto rz = poly_roots({0.0, 0.0, 0.0, 0.0, 1.0});  // u^4
    REQUIRE(rz.roots.size() == 4);
    for (auto& z : rz.roots) CHECK(std::abs(z) == 0.0);

    auto ri = poly_roots({1.0, 0.0, 1.0});  // u^2 + 1
    REQUIRE(ri.roots.size() == 2);
    CHECK(std::abs(ri.roots[0] - cplx(0, -1)) < 1e-13);
    CHECK(std::abs(ri.roots[1] - cplx(0, 1)) < 1e-13);
}

TEST_CASE("poly_roots backward error on random polynomials") {
    SplitMix64 rng(101);
    for (int t = 0; t < 100; ++t) {
        int deg = 1 + int(rng.next() % 16);
        std::vector<cplx> c;
        for (int i = 0; i <= deg; ++i)
            c.push_back(cplx(rng.uniform01() * 4 - 2, rng.uniform01() * 4 - 2));
        if (std::abs(c.back()) < 0.1) c.back() += 1.0;
        auto rr = poly_roots(c);
        CHECK(rr.roots.size() == size_t(deg));
        CHECK(rr.converged);
        CHECK(rr.max_backward_error <= 1e-12);
    }
}

TEST_CASE("one-variable Mahler measures") {
    CHECK(mahler1(parse_laurent1("u^2-u-1")).log_value ==
          doctest::Approx(std::log(TAU)).epsilon(1e-12));
    CHECK(mahler1(parse_laurent1("7*u^3")).log_value == doctest::Approx(std::log(7.0)));
    CHECK(mahler1(parse_laurent1("2*u-1")).log_value == doctest::Approx(std::log(2.0)));
    SplitMix64 rng(103);
    for (int t = 0; t < 60; ++t) {
        std::vector<int128> ca, cb;
        int da = 1 + int(rng.next() % 6), db = 1 + int(rng.next() % 6);
        for (int i = 0; i <= da; ++i) ca.push_back(int128(rng.next() % 9) - 4);
        for (int i = 0; i <= db; ++i) cb.push_back(int128(rng.next() % 9) - 4);
        LaurentPoly1 a(0, std::move(ca)), b(0, std::move(cb));
        if (a.is_zero() || b.is_zero()) continue;
        auto ma = mahler1(a), mb = mahler1(b), mab = mahler1(mul(a, b));
        CHECK(std::abs(mab.log_value - ma.log_value - mb.log_value) <
              ma.error_bound + mb.error_bound + mab.error_bound + 1e-10);
    }
}

TEST_CASE("torus quadrature") {
    QuadratureGrid g;
    g.n = 64;
    g.dims = 1;
    auto one = [](const double*) { return 1.0; };
    CHECK(torus_quad(one, g).value == doctest::Approx(1.0).epsilon(1e-15));

    auto logdist = [](const double* s) {
        return std::log(std::abs(unit(s[0]) - cplx(2.0, 0.0)));
    };
    CHECK(torus_quad(logdist, g).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    QuadratureGrid g2;
    g2.n = 256;
    g2.dims = 2;
    auto f2 = [](const double* s) {
        return std::log(
            std::abs(5.0 - 2.0 * std::cos(2 * M_PI * s[0]) - 2.0 * std::cos(2 * M_PI * s[1])));
    };
    CHECK(torus_quad(f2, g2).value == doctest::Approx(1.507982).epsilon(1e-5));

    // doubling error decays at least geometrically on smooth nonvanishing
    // integrands
    auto smooth = [](const double* s) { return std::log(std::abs(3.0 + unit(s[0]))); };
    double prev_err = 1.0;
    for (int64_t n : {8, 16, 32}) {
        QuadratureGrid gg;
        gg.n = n;
        gg.dims = 1;
        double err = torus_quad(smooth, gg).error_heuristic;
        CHECK(err < prev_err * 0.51 + 1e-14);
        prev_err = err;
    }
}

TEST_CASE("mahlerN: two-variable values") {
    QuadratureGrid g;
    g.n = 512;
    LaurentPoly2 f;  // 5 - u1 - u1^-1 - u2 - u2^-1
    f.add_term(0, 0, 5);
    f.add_term(1, 0, -1);
    f.add_term(-1, 0, -1);
    f.add_term(0, 1, -1);
    f.add_term(0, -1, -1);
    auto mv = mahlerN(f, g);
    CHECK(mv.log_value == doctest::Approx(1.507982).epsilon(1e-4));
    CHECK(mv.flagged_slices == 0);

    auto mono = mahlerN(LaurentPoly2::monomial(1, 3, 1), g);
    CHECK(mono.log_value == doctest::Approx(0.0));

    LaurentPoly2 h = parse_laurent2("1+u1+u2");
    CHECK(mahlerN(h, g).log_value == doctest::Approx(0.3230659).epsilon(5e-4));
}

TEST_CASE("mahlerN three variables vs the independent nested oracle") {
    // m(1 + u1 + u2 + u3): the exact inner integral is log^+ |1 + u2 + u3|,
    // so the oracle nests adaptive Simpson over that
    auto inner = [](double s2, double s3) {
        return std::max(std::log(std::abs(1.0 + unit(s2) + unit(s3))), 0.0);
    };
    double oracle = integrate01(
        [&](double s3) { return integrate01([&](double s2) { return inner(s2, s3); }, 1e-8); },
        1e-8);
    CHECK(oracle == doctest::Approx(7.0 * 1.2020569031595943 / (2.0 * M_PI * M_PI)).epsilon(1e-5));

    MultiPoly f;
    f.dims = 3;
    f.exps = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    f.coeffs = {1.0, 1.0, 1.0, 1.0};
    QuadratureGrid g;
    g.n = 128;
    g.dims = 3;
    auto mv = mahlerN(f, g);
    CHECK(std::abs(mv.log_value - oracle) < 1e-3);
}

TEST_CASE("exact arithmetic in Q(sqrt 5)") {
    Sqrt5 tau = Sqrt5::tau(), sigma = Sqrt5::sigma();
    CHECK(tau * sigma == Sqrt5(-1));
    CHECK(tau + sigma == Sqrt5(1));
    CHECK(tau.conj() == sigma);
    CHECK(tau * tau == tau + Sqrt5(1));
    CHECK(tau.inverse() * tau == Sqrt5(1));
    SplitMix64 rng(107);
    for (int t = 0; t < 30; ++t) {
        PolyQ5 p;
        int deg = 1 + int(rng.next() % 5);
        for (int i = 0; i <= deg; ++i)
            p.push_back(Sqrt5(mpq_class(long(rng.next() % 9) - 4),
                              mpq_class(long(rng.next() % 9) - 4, 2)));
        PolyQ5 q = poly_mul(p, poly_conj(p));
        for (auto& c : q) CHECK(c.is_rational());
    }
}

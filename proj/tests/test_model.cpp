#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "primelab/dd.hpp"
#include "primelab/model.hpp"

using namespace primelab;

TEST_CASE("parameter validation") {
    CHECK_THROWS(ModelFunction(0.9, 0.0));
    CHECK_THROWS(ModelFunction(2.0, 0.0));
    CHECK_THROWS(ModelFunction(1.0, 0.0)); // c = 1 needs A > 0
    CHECK_THROWS(ModelFunction(1.5, -1.0));
    CHECK_NOTHROW(ModelFunction(1.0, 2.0));
    CHECK_NOTHROW(ModelFunction(1.5, 0.0));
}

TEST_CASE("double-double square roots of exact squares are exact") {
    for (int k = 2; k <= 300; ++k) {
        dd s = dd_sqrt(dd(static_cast<double>(k) * k));
        CHECK(s.hi == static_cast<double>(k));
        CHECK(s.lo == 0.0);
    }
    // Non-squares still get a faithfully rounded result.
    dd r = dd_sqrt(dd(2.0));
    dd back = r * r - 2.0;
    CHECK(std::abs(back.value()) <= 1e-30);
}

TEST_CASE("x^{3/2} is exact on perfect squares in double-double") {
    ModelFunction h(1.5, 0.0);
    for (int k = 2; k <= 200; ++k) {
        dd v = h.eval_dd(dd(static_cast<double>(k) * k));
        CHECK(v.hi == static_cast<double>(k) * k * k);
        CHECK(v.lo == 0.0);
    }
}

TEST_CASE("inverse round trip") {
    for (double c : {1.5, 1.25, 1.9}) {
        for (double A : {0.0, 1.0}) {
            ModelFunction h(c, A);
            for (double y = 10.0; y <= 1e9; y *= 37.0) {
                double x = inverse_phi(h, y);
                REQUIRE(std::abs(h.eval(x) - y) <= 1e-13 * y);
                dd xd = inverse_phi_dd(h, dd(y));
                REQUIRE(std::abs((h.eval_dd(xd) - y).value()) <= 1e-25 * y);
            }
        }
    }
    ModelFunction g(1.0, 2.0);
    for (double y = 10.0; y <= 1e6; y *= 13.0) {
        double x = inverse_phi(g, y);
        REQUIRE(std::abs(g.eval(x) - y) <= 1e-12 * y);
    }
}

TEST_CASE("inverse at exact cubes is an exact square for c = 3/2") {
    ModelFunction h(1.5, 0.0);
    for (int k = 2; k <= 100; ++k) {
        double y = static_cast<double>(k) * k * k;
        dd x = inverse_phi_dd(h, dd(y));
        CHECK(x.hi == static_cast<double>(k) * k);
        CHECK(x.lo == 0.0);
    }
}

TEST_CASE("phi_derivative matches finite differences") {
    ModelFunction h(1.5, 0.5);
    for (double x : {100.0, 1000.0, 50000.0}) {
        double step = x * 1e-5;
        double fd1 = (inverse_phi(h, x + step) - inverse_phi(h, x - step)) / (2.0 * step);
        double d1 = phi_derivative(h, 1, x);
        REQUIRE(std::abs(d1 - fd1) <= 1e-7 * std::abs(d1));
        double fd2 = (phi_derivative(h, 1, x + step) - phi_derivative(h, 1, x - step)) / (2.0 * step);
        double d2 = phi_derivative(h, 2, x);
        REQUIRE(std::abs(d2 - fd2) <= 1e-5 * std::abs(d2));
        REQUIRE(phi_derivative(h, 0, x) == doctest::Approx(inverse_phi(h, x)).epsilon(1e-13));
    }
}

TEST_CASE("derivative correction factor") {
    ModelFunction a(1.5, 0.0);
    CHECK(a.sigma(10.0) == 1.0);
    CHECK(a.sigma(1e8) == 1.0);
    ModelFunction b(1.0, 2.0);
    CHECK(b.sigma(1e6) == doctest::Approx(2.0 / std::log(1e6)).epsilon(1e-14));
    CHECK(b.sigma(3.0) == 1.0); // clamped at 1 while A >= log x
    CHECK(b.sigma(1e4) <= b.sigma(1e3)); // decreasing once unclamped
}

TEST_CASE("membership window behaves like the inverse derivative") {
    FunctionPair pair = canonical_pair(1.5);
    CHECK(pair.gamma1() == doctest::Approx(2.0 / 3.0));
    CHECK(pair.x_psi() > 1.0);
    CHECK(pair.x_psi() < 3.0);
    CHECK(pair.psi(pair.x_psi()) <= 0.5 + 1e-9);
    double prev = pair.psi(pair.x_psi() + 1.0);
    for (double x = pair.x_psi() + 2.0; x < 1e6; x *= 3.0) {
        double cur = pair.psi(x);
        REQUIRE(cur > 0.0);
        REQUIRE(cur < prev);
        REQUIRE(pair.psi(x, 1) < 0.0);
        prev = cur;
    }
    // psi(x) = phi2(x+1) - phi2(x) tracks phi2'(x) closely for large x.
    double x = 1e6;
    double ratio = pair.psi(x) / phi_derivative(pair.h2(), 1, x);
    CHECK(std::abs(ratio - 1.0) <= 1e-3);
    // Extended and standard evaluations agree.
    CHECK(std::abs(pair.psi_dd(x).value() - pair.psi(x)) <= 1e-12 * pair.psi(x));
}

TEST_CASE("mixed pair accepts distinct exponents") {
    FunctionPair pair(ModelFunction(1.25, 0.0), ModelFunction(1.75, 0.0));
    CHECK(pair.gamma1() == doctest::Approx(0.8));
    CHECK(pair.gamma2() == doctest::Approx(1.0 / 1.75));
    CHECK(pair.psi(100.0) > 0.0);
    CHECK(pair.sigma1(100.0) == 1.0);
}

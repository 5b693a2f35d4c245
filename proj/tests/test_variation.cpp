#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "primelab/variation.hpp"

using namespace primelab;
using cvec = std::vector<std::complex<double>>;

namespace {

// Exhaustive oracle: best l^r jump norm over all increasing index subsets.
double brute_force_vr(const cvec& seq, double r) {
    std::size_t n = seq.size();
    double best = 0.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        double acc = 0.0;
        int prev = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            if (prev >= 0) acc += std::pow(std::abs(seq[i] - seq[static_cast<std::size_t>(prev)]), r);
            prev = static_cast<int>(i);
        }
        best = std::max(best, acc);
    }
    return std::pow(best, 1.0 / r);
}

cvec random_seq(std::mt19937_64& rng, std::size_t len) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    cvec s(len);
    for (auto& v : s) v = {u(rng), u(rng)};
    return s;
}

} // namespace

TEST_CASE("dynamic program equals exhaustive search") {
    std::mt19937_64 rng(123);
    for (double r : {1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
        for (int trial = 0; trial < 300; ++trial) {
            cvec s = random_seq(rng, 2 + rng() % 11); // lengths 2..12
            double oracle = brute_force_vr(s, r);
            double got = vr_exact(s, r).value;
            REQUIRE(std::abs(got - oracle) <= 1e-10 * std::max(1.0, oracle));
        }
    }
}

TEST_CASE("first variation is the consecutive jump sum") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        cvec s = random_seq(rng, 2 + rng() % 20);
        double consec = 0.0;
        for (std::size_t i = 1; i < s.size(); ++i) consec += std::abs(s[i] - s[i - 1]);
        REQUIRE(vr_exact(s, 1.0).value == doctest::Approx(consec).epsilon(1e-12));
    }
}

TEST_CASE("recovered subsequence reproduces the optimum") {
    std::mt19937_64 rng(9);
    for (double r : {1.5, 2.0, 3.0}) {
        for (int trial = 0; trial < 100; ++trial) {
            cvec s = random_seq(rng, 2 + rng() % 11);
            VariationResult res = vr_exact(s, r);
            double acc = 0.0;
            for (std::size_t i = 1; i < res.subsequence.size(); ++i) {
                REQUIRE(res.subsequence[i] > res.subsequence[i - 1]);
                acc += std::pow(std::abs(s[res.subsequence[i]] - s[res.subsequence[i - 1]]), r);
            }
            REQUIRE(std::pow(acc, 1.0 / r) == doctest::Approx(res.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("hand-checked small cases") {
    VariationResult tent = vr_exact({{0, 0}, {1, 0}, {0, 0}}, 2.0);
    CHECK(tent.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(tent.subsequence == std::vector<std::size_t>{0, 1, 2});

    VariationResult flat = vr_exact({{3, 1}, {3, 1}, {3, 1}}, 2.0);
    CHECK(flat.value == 0.0);
    CHECK(flat.subsequence == std::vector<std::size_t>{0});

    VariationResult single = vr_exact({{7, 0}}, 3.0);
    CHECK(single.value == 0.0);

    CHECK_THROWS(vr_exact({}, 2.0));
    CHECK_THROWS(vr_exact({{1, 0}, {2, 0}}, 0.5));
}

TEST_CASE("variation decreases as r grows") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        cvec s = random_seq(rng, 3 + rng() % 10);
        double prev = vr_exact(s, 1.0).value;
        for (double r : {1.5, 2.0, 3.0, 5.0}) {
            double cur = vr_exact(s, r).value;
            REQUIRE(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("concatenation is subadditive up to the junction jump") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        cvec a = random_seq(rng, 2 + rng() % 6);
        cvec b = random_seq(rng, 2 + rng() % 6);
        cvec ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        double whole = vr_exact(ab, 2.0).value;
        double parts = vr_exact(a, 2.0).value + vr_exact(b, 2.0).value +
                       std::abs(b.front() - a.back());
        REQUIRE(whole <= parts + 1e-10);
    }
}

TEST_CASE("lacunary index points") {
    CHECK(zrho_point(0.5, 0) == 1);
    CHECK(zrho_point(0.5, 1) == 2);
    CHECK(zrho_point(0.5, 4) == 4);
    CHECK(zrho_point(0.4, 25) == static_cast<std::int64_t>(
                                     std::floor(std::exp2(std::pow(25.0, 0.4)))));
    auto idx = zrho_indices(0.5, 1, 100000);
    for (std::size_t i = 1; i < idx.size(); ++i) REQUIRE(idx[i] > idx[i - 1]);
    CHECK(idx.front() >= 1);
    CHECK(idx.back() <= 100000);
    CHECK_THROWS(zrho_indices(1.5, 1, 10));
    CHECK_THROWS(zrho_point(0.5, -1));
}

TEST_CASE("long/short split controls the full variation") {
    std::mt19937_64 rng(2024);
    for (double rho : {0.3, 0.5, 0.7}) {
        for (double r : {2.5, 3.0}) {
            for (int trial = 0; trial < 200; ++trial) {
                std::size_t len = 4 + rng() % 60;
                std::int64_t base = 1 + static_cast<std::int64_t>(rng() % 40);
                cvec s = random_seq(rng, len);
                SplitResult sp = vr_split(s, base, r, rho);
                double full = vr_exact(s, r).value;
                REQUIRE(full <= 3.0 * (sp.long_part + sp.short_part) + 1e-10);
                REQUIRE(sp.long_part >= 0.0);
                REQUIRE(sp.short_part >= 0.0);
                double pw = 0.0;
                for (double b : sp.blocks) pw += std::pow(b, r);
                REQUIRE(sp.short_part == doctest::Approx(std::pow(pw, 1.0 / r)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("split of a tail oscillation lands mostly in the short part") {
    // A sequence that only moves inside one late block: the long part over the
    // sparse index set barely sees it.
    double rho = 0.7;
    std::int64_t base = 1;
    std::size_t len = 200;
    cvec s(len, {0.0, 0.0});
    auto bnd = zrho_indices(rho, base, base + static_cast<std::int64_t>(len) - 1);
    REQUIRE(bnd.size() >= 3);
    std::int64_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < bnd.size(); ++i)
        if (bnd[i] - bnd[i - 1] >= 6) {
            lo = bnd[i - 1];
            hi = bnd[i];
        }
    REQUIRE(hi > lo);
    for (std::int64_t i = lo + 1; i < hi; ++i)
        s[static_cast<std::size_t>(i - base)] = {(i - lo) % 2 ? 1.0 : 0.0, 0.0};
    SplitResult sp = vr_split(s, base, 3.0, rho);
    CHECK(sp.short_part > 1.0);
    CHECK(sp.long_part <= 1.0 + 1e-12);
}

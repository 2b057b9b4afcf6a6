#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spectile/cyclo.hpp"

using namespace spectile;

namespace {

std::complex<double> evaluate(const CycInt& c) {
    std::complex<double> s = 0;
    const double n = static_cast<double>(c.order());
    for (std::int64_t k = 0; k < c.order(); ++k)
        s += static_cast<double>(c.coeff(k)) * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / n);
    return s;
}

IntPoly x_pow_minus_one(std::int64_t n) {
    IntPoly p;
    p.coeffs.assign(static_cast<std::size_t>(n + 1), 0);
    p.coeffs[0] = -1;
    p.coeffs[n] = 1;
    return p;
}

}  // namespace

TEST_CASE("cyclotomic_poly examples") {
    CHECK(cyclotomic_poly(1) == IntPoly{{-1, 1}});
    CHECK(cyclotomic_poly(2) == IntPoly{{1, 1}});
    CHECK(cyclotomic_poly(6) == IntPoly{{1, -1, 1}});
    CHECK(cyclotomic_poly(30) == IntPoly{{1, 1, 0, -1, -1, -1, 0, 1, 1}});
    CHECK(cyclotomic_poly(30).degree() == 8);
    CHECK_THROWS_AS(cyclotomic_poly(0), std::invalid_argument);

    // oracle: (x^6 - 1) / (Phi_1 Phi_2 Phi_3) computed here by long division
    auto den = poly_mul(poly_mul(IntPoly{{-1, 1}}, IntPoly{{1, 1}}), IntPoly{{1, 1, 1}});
    CHECK(poly_div_exact(x_pow_minus_one(6), den) == cyclotomic_poly(6));
    CHECK_THROWS_AS(poly_div_exact(IntPoly{{1, 0, 1}}, IntPoly{{1, 1}}), std::domain_error);
}

TEST_CASE("prod_{d | N} Phi_d = x^N - 1 and deg Phi_N = phi(N), N <= 60") {
    for (std::int64_t n = 1; n <= 60; ++n) {
        IntPoly prod{{1}};
        for (std::int64_t d = 1; d <= n; ++d)
            if (n % d == 0) prod = poly_mul(prod, cyclotomic_poly(d));
        CHECK(prod == x_pow_minus_one(n));
        std::int64_t phi = 0;
        for (std::int64_t k = 1; k <= n; ++k) phi += std::gcd(k, n) == 1;
        CHECK(euler_phi(n) == phi);
        CHECK(cyclotomic_poly(n).degree() == phi);
    }
}

TEST_CASE("cyc_is_zero examples") {
    CHECK(cyc_is_zero(CycInt(6, {1, 1, 1, 1, 1, 1})));
    CHECK(cyc_is_zero(CycInt(6, {-1, 1, 0, 0, 0, 1})));
    CHECK_FALSE(cyc_is_zero(CycInt(6, {1, 1, 0, 0, 0, 0})));
    CHECK(cyc_is_zero(CycInt(1)));
    CHECK_FALSE(cyc_is_zero(CycInt::constant(1, 3)));
}

TEST_CASE("cyc_add / cyc_neg examples") {
    auto a = CycInt(6, {2, 0, 3, 0, -1, 5});
    CHECK(cyc_is_zero(cyc_add(a, cyc_neg(a))));
    auto one = CycInt::constant(6, 1);
    CHECK(cyc_add(one, one).coeff(0) == 2);
    auto cube = CycInt(6, {1, 0, 1, 0, 1, 0});
    auto twice = cyc_add(cube, cube);
    CHECK(twice.coeffs() == std::vector<std::int64_t>{2, 0, 2, 0, 2, 0});
    CHECK(cyc_is_zero(twice));
    CHECK_THROWS_AS(cyc_add(CycInt(6), CycInt(5)), std::invalid_argument);
}

TEST_CASE("cyc_mul / cyc_conj") {
    auto z = CycInt::root(6, 1);
    CHECK(cyc_equal(cyc_mul(z, cyc_conj(z)), CycInt::constant(6, 1)));
    CHECK(cyc_is_zero(cyc_mul(CycInt(6, {3, 1, 4, 1, 5, 9}), CycInt(6))));
    CHECK(cyc_mul(CycInt::root(6, 4), CycInt::root(6, 5)).coeffs() == CycInt::root(6, 3).coeffs());
    CHECK(cyc_conj(CycInt::root(6, 1)).coeffs() == CycInt::root(6, 5).coeffs());
}

TEST_CASE("cyc_as_integer") {
    CHECK(cyc_as_integer(CycInt(6, {1, 1, 1, 1, 1, 1})) == std::optional<std::int64_t>(0));
    CHECK(cyc_as_integer(CycInt::constant(6, 36)) == std::optional<std::int64_t>(36));
    CHECK_FALSE(cyc_as_integer(CycInt::root(6, 1)).has_value());
    // -zeta_3 - zeta_3^2 = 1
    CHECK(cyc_as_integer(CycInt(3, {0, -1, -1})) == std::optional<std::int64_t>(1));
}

TEST_CASE("cyc_embed keeps the value") {
    auto a = CycInt(6, {1, 2, 0, 0, 1, 3});
    auto b = cyc_embed(a, 30);
    CHECK(b.order() == 30);
    CHECK(std::abs(evaluate(a) - evaluate(b)) < 1e-9);
    CHECK(cyc_equal(cyc_embed(CycInt(6, {1, 1, 1, 1, 1, 1}), 60), CycInt(60)));
    CHECK_THROWS_AS(cyc_embed(a, 8), std::invalid_argument);
}

TEST_CASE("cyc_equal is by value, not by raw coefficients") {
    CHECK(cyc_equal(CycInt(6, {0, 0, 1, 0, 0, 0}), CycInt(6, {-1, 1, 0, 0, 0, 0})));  // zeta^2 = zeta - 1
    CHECK_FALSE(CycInt(6, {0, 0, 1, 0, 0, 0}).coeffs() == CycInt(6, {-1, 1, 0, 0, 0, 0}).coeffs());
}

TEST_CASE("ring properties") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> order(1, 60), coef(-3, 3);
    for (int t = 0; t < 300; ++t) {
        auto n = order(rng);
        std::vector<std::int64_t> ca(n), cb(n);
        for (auto& x : ca) x = coef(rng);
        for (auto& x : cb) x = coef(rng);
        CycInt a(n, ca), b(n, cb);
        CHECK(cyc_equal(cyc_conj(cyc_conj(a)), a));
        CHECK(cyc_equal(cyc_mul(a, b), cyc_mul(b, a)));
        if (cyc_is_zero(a)) CHECK(cyc_is_zero(cyc_mul(a, b)));
        auto za = cyc_sub(a, a);
        CHECK(cyc_is_zero(za));
        CHECK(cyc_is_zero(cyc_add(za, cyc_mul(za, b))));
        auto nrm = cyc_as_integer(cyc_mul(a, cyc_conj(a)));
        if (nrm) CHECK(*nrm >= 0);
    }
    for (std::int64_t n = 2; n <= 60; ++n) {
        CycInt all(n, std::vector<std::int64_t>(n, 1));
        CHECK(cyc_is_zero(all));
    }
}

TEST_CASE("cyc_is_zero agrees with float evaluation on random 0/1 root sums") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::int64_t> order(1, 60);
    int zeros = 0;
    for (int t = 0; t < 2000; ++t) {
        auto n = order(rng);
        std::vector<std::int64_t> c(n);
        // sparse sums or unions of cosets, so that zeros actually occur
        if (t % 2 == 0) {
            std::bernoulli_distribution keep(0.5);
            for (auto& x : c) x = keep(rng);
        } else {
            std::uniform_int_distribution<std::int64_t> pick(1, n);
            auto d = pick(rng);
            while (n % d) --d;
            auto start = pick(rng) - 1;
            for (std::int64_t k = 0; k < d; ++k) c[(start + k * (n / d)) % n] = 1;
        }
        CycInt v(n, c);
        bool exact = cyc_is_zero(v);
        bool approx = std::abs(evaluate(v)) < 1e-9;
        zeros += exact;
        REQUIRE(exact == approx);
    }
    CHECK(zeros > 100);
}

TEST_CASE("overflow is detected") {
    auto big = CycInt::constant(2, std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(cyc_add(big, big), std::overflow_error);
}

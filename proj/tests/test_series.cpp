#include <catch2/catch_amalgamated.hpp>

#include "fpsq/series.hpp"
#include "fpsq/verify.hpp"

using fpsq::rational;
using fpsq::series;

namespace {

series S(std::vector<rational> c) { return series(std::move(c)); }

// Independent check for the compositional-inverse example: the n-th Catalan
// number from the binomial closed form C(2n, n) / (n + 1).
rational catalan_number(std::size_t n) {
    fpsq::bigint binom = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        binom *= static_cast<unsigned long long>(n + i);
        binom /= static_cast<unsigned long long>(i);
    }
    return rational(binom, fpsq::bigint(n + 1));
}

} // namespace

TEST_CASE("monomial") {
    CHECK(series::monomial(0, 4) == S({1, 0, 0, 0, 0}));
    CHECK(series::monomial(2, 4) == S({0, 0, 1, 0, 0}));
    CHECK_THROWS_AS(series::monomial(5, 4), fpsq::truncation_exceeded);
}

TEST_CASE("addition and scaling") {
    CHECK(S({1, 1}) + S({0, -1}) == S({1, 0}));
    CHECK(rational(0) * S({rational(3), rational(1, 2)}) == series::zero(1));
    CHECK(rational(2) * S({rational(1), rational(1, 2)}) == S({2, 1}));
    // Mixed truncations meet at the shorter window.
    CHECK(S({1, 2, 3}) + S({1, 1}) == S({2, 3}));
}

TEST_CASE("product") {
    const series one_plus = S({1, 1, 0, 0});
    const series one_minus = S({1, -1, 0, 0});
    CHECK(one_plus * one_minus == S({1, 0, -1, 0}));
    CHECK(S({1, 1, 1}) * S({1, 1, 0}) == S({1, 2, 2}));
    CHECK((S({1, 2, 3}) * series::zero(2)).is_zero());
}

TEST_CASE("order") {
    CHECK(order(S({0, 0, 3, 0})) == std::size_t{2});
    CHECK_FALSE(order(S({0, 0, 0, 0})).has_value());
    CHECK(order(S({5})) == std::size_t{0});
}

TEST_CASE("powers") {
    CHECK(pow(S({0, 1, -1}), 0) == S({1, 0, 0}));
    CHECK(pow(S({1, 1, 0}), 2) == S({1, 2, 1}));
    CHECK(pow(series::monomial(1, 4), 3) == S({0, 0, 0, 1, 0}));
}

TEST_CASE("multiplicative inverse") {
    CHECK(mul_inverse(S({1, -1, 0, 0, 0})) == S({1, 1, 1, 1, 1}));
    CHECK(mul_inverse(S({1, 1, 0, 0})) == S({1, -1, 1, -1}));
    CHECK_THROWS_AS(mul_inverse(S({0, 1, 2})), fpsq::not_invertible);
}

TEST_CASE("mul_inverse is a right inverse on random units") {
    fpsq::series_sampler sampler(11);
    for (int t = 0; t < 25; ++t) {
        const series g = sampler.unit(10);
        CHECK(g * mul_inverse(g) == series::monomial(0, 10));
    }
}

TEST_CASE("division") {
    const series x = series::monomial(1, 5);
    const series f = S({0, 1, -1, 0, 0, 0}); // x - x^2
    SECTION("x / (x - x^2) is the geometric series") {
        const series q = divide(x, f);
        CHECK(q == S({1, 1, 1, 1, 1}));
        CHECK(q.truncation() == 4);
    }
    SECTION("(x - x^2) / x") {
        CHECK(divide(f, x) == S({1, -1, 0, 0, 0}));
    }
    SECTION("1 / x is not a power series") {
        CHECK_THROWS_AS(divide(series::monomial(0, 5), x), fpsq::not_divisible);
    }
    SECTION("division by theta") {
        CHECK_THROWS_AS(divide(x, series::zero(5)), fpsq::not_divisible);
    }
}

TEST_CASE("divide undoes mul") {
    fpsq::series_sampler sampler(12);
    for (int t = 0; t < 25; ++t) {
        series den = sampler.arbitrary(10);
        const std::size_t d = sampler.raw(3);
        {
            // Force order(den) = d.
            std::vector<rational> c = den.coeffs();
            for (std::size_t i = 0; i < d; ++i)
                c[i] = rational(0);
            c[d] = sampler.nonzero_rational();
            den = series(std::move(c));
        }
        const series f = sampler.arbitrary(10);
        const series q = divide(f * den, den);
        CHECK(equal_upto(q, f, 10 - d));
    }
}

TEST_CASE("derivative") {
    CHECK(derivative(S({1, 2, 3})) == S({2, 6}));
    CHECK(derivative(series::monomial(0, 5)) == series::zero(4));
    CHECK(derivative(mul_inverse(S({1, -1, 0, 0, 0}))) == S({1, 2, 3, 4}));
    CHECK_THROWS_AS(derivative(S({1})), fpsq::truncation_exceeded);
}

TEST_CASE("composition") {
    SECTION("polynomial inner") {
        const series g = S({1, 1, 1}); // 1 + x + x^2
        const series two_x = S({0, 2, 0});
        CHECK(compose(g, two_x) == S({1, 2, 4}));
    }
    SECTION("identity inner") {
        const series g = S({rational(1), rational(1, 2), rational(3), rational(-2)});
        CHECK(compose(g, series::monomial(1, 3)) == g);
    }
    SECTION("geometric in x^2") {
        const series geo = mul_inverse(S({1, -1, 0, 0, 0, 0}));
        CHECK(compose(geo, series::monomial(2, 5)) == S({1, 0, 1, 0, 1, 0}));
    }
    SECTION("unit inner rejected") {
        CHECK_THROWS_AS(compose(S({1, 1}), S({1, 1})), fpsq::composition_requires_nonunit);
    }
    SECTION("nonunit with f1 = 0 is fine") {
        CHECK_NOTHROW(compose(S({1, 1, 1}), S({0, 0, 1})));
    }
}

TEST_CASE("compositional inverse") {
    SECTION("x - x^2 reverts to the Catalan series") {
        const series fbar = comp_inverse(S({0, 1, -1, 0, 0, 0}));
        CHECK(fbar == S({0, 1, 1, 2, 5, 14}));
        for (std::size_t n = 1; n <= 5; ++n)
            CHECK(fbar.coeff(n) == catalan_number(n - 1));
    }
    SECTION("identity") {
        CHECK(comp_inverse(series::monomial(1, 4)) == series::monomial(1, 4));
    }
    SECTION("linear") {
        CHECK(comp_inverse(S({0, 2, 0, 0})) == S({rational(0), rational(1, 2), 0, 0}));
    }
    SECTION("not almost unit") {
        CHECK_THROWS_AS(comp_inverse(S({1, 1})), fpsq::not_almost_unit);
        CHECK_THROWS_AS(comp_inverse(S({0, 0, 1})), fpsq::not_almost_unit);
        CHECK_THROWS_AS(comp_inverse(S({0})), fpsq::not_almost_unit);
    }
}

TEST_CASE("comp_inverse is two-sided on random almost units") {
    fpsq::series_sampler sampler(13);
    const series identity = series::monomial(1, 8);
    for (int t = 0; t < 15; ++t) {
        const series f = sampler.almost_unit(8);
        const series fbar = comp_inverse(f);
        CHECK(compose(f, fbar) == identity);
        CHECK(compose(fbar, f) == identity);
    }
}

TEST_CASE("backshift") {
    CHECK(backshift(S({0, 2, 3})) == S({2, 3}));
    CHECK(backshift(series::monomial(1, 6)) == series::monomial(0, 5));
    CHECK_THROWS_AS(backshift(S({1})), fpsq::truncation_exceeded);

    const series f = S({0, 1, -1, 0, 0, 0});
    const series hat = backshift(f); // 1 - x
    CHECK(hat == S({1, -1, 0, 0, 0}));
    CHECK(mul_inverse(hat) == divide(series::monomial(1, 5), f));
    // f = x * fhat on the common window
    CHECK(equal_upto(series::monomial(1, 5) * hat, f, 4));
}

TEST_CASE("coefficient access and prefix equality") {
    const series fbar = S({0, 1, 1, 2, 5});
    CHECK(fbar.coeff(4) == rational(5));
    CHECK(equal_upto(fbar, fbar, 4));
    CHECK_THROWS_AS(fbar.coeff(5), fpsq::truncation_exceeded);
    CHECK_THROWS_AS(equal_upto(fbar, fbar, 5), fpsq::truncation_exceeded);
    CHECK_FALSE(equal_upto(fbar, S({0, 1, 1, 2, 4}), 4));
    CHECK(equal_upto(fbar, S({0, 1, 1, 2, 4}), 3));
}

TEST_CASE("degenerate truncation zero") {
    const series c = series::constant(rational(3), 0);
    CHECK(c.truncation() == 0);
    CHECK_THROWS_AS(derivative(c), fpsq::truncation_exceeded);
    CHECK_THROWS_AS(backshift(c), fpsq::truncation_exceeded);
    CHECK(c * c == series::constant(rational(9), 0));
    CHECK_THROWS_AS(series(std::vector<rational>{}), fpsq::precondition_violated);
}

TEST_CASE("product order additivity") {
    fpsq::series_sampler sampler(14);
    for (int t = 0; t < 40; ++t) {
        const std::size_t a = sampler.raw(4);
        const std::size_t b = sampler.raw(4);
        std::vector<rational> fc(11), gc(11);
        for (std::size_t i = a; i <= 10; ++i)
            fc[i] = i == a ? sampler.nonzero_rational() : sampler.small_rational();
        for (std::size_t i = b; i <= 10; ++i)
            gc[i] = i == b ? sampler.nonzero_rational() : sampler.small_rational();
        const series f(std::move(fc));
        const series g(std::move(gc));
        REQUIRE(order(f) == a);
        REQUIRE(order(g) == b);
        CHECK(order(f * g) == a + b);
    }
}

TEST_CASE("zero annihilates products") {
    fpsq::series_sampler sampler(15);
    for (int t = 0; t < 20; ++t) {
        const series f = sampler.arbitrary(9);
        CHECK((f * series::zero(9)).is_zero());
        CHECK((series::zero(9) * f).is_zero());
    }
}

TEST_CASE("canonical text and coefficient families") {
    CHECK(S({rational(1), rational(1), rational(1, 2)}).str() == "1, 1, 1/2");
    const series e = fpsq::exp_series(4);
    CHECK(e == S({rational(1), rational(1), rational(1, 2), rational(1, 6), rational(1, 24)}));
    const series l = fpsq::log1p_series(4);
    CHECK(l == S({rational(0), rational(1), rational(-1, 2), rational(1, 3), rational(-1, 4)}));
    // log1p(exp(x) - 1) = x
    CHECK(compose(l, e - series::monomial(0, 4)) == series::monomial(1, 4));
}

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "borsuk/numeric_core.hpp"

using namespace borsuk;

namespace {

// Pascal triangle in 64-bit arithmetic, independent of binomial_exact.
std::vector<std::vector<std::uint64_t>> pascal(int rows) {
    std::vector<std::vector<std::uint64_t>> table(rows + 1);
    for (int n = 0; n <= rows; ++n) {
        table[n].assign(n + 1, 1);
        for (int k = 1; k < n; ++k) {
            table[n][k] = table[n - 1][k - 1] + table[n - 1][k];
        }
    }
    return table;
}

bool trial_factor_prime_power(std::int64_t m) {
    std::vector<std::int64_t> primes;
    for (std::int64_t q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            primes.push_back(q);
            while (m % q == 0) {
                m /= q;
            }
        }
    }
    if (m > 1) {
        primes.push_back(m);
    }
    return primes.size() == 1;
}

}  // namespace

TEST_CASE("binomial_exact examples") {
    CHECK(binomial_exact(4, 2) == 6);
    CHECK(binomial_exact(29, 9) == pascal(29)[29][9]);
    CHECK(binomial_exact(29, 9) == 10015005);
    CHECK(binomial_exact(5, 7) == 0);
    CHECK(binomial_exact(5, -1) == 0);
    CHECK(binomial_exact(0, 0) == 1);
}

TEST_CASE("binomial_exact is exact beyond 64 bits") {
    // C(100, 50) = 100891344545564193334812497256
    CHECK(binomial_exact(100, 50).str() == "100891344545564193334812497256");
}

TEST_CASE("Pascal identity holds for n <= 60") {
    for (int n = 1; n <= 60; ++n) {
        for (int k = 1; k <= n; ++k) {
            REQUIRE(binomial_exact(n, k) == binomial_exact(n - 1, k - 1) + binomial_exact(n - 1, k));
        }
    }
}

TEST_CASE("log2_binomial examples and domain") {
    CHECK(log2_binomial(4, 2) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
    CHECK(log2_binomial(29, 9) == doctest::Approx(std::log2(10015005.0)).epsilon(1e-12));
    CHECK(log2_binomial(29, 9) == doctest::Approx(23.2557).epsilon(1e-5));
    CHECK(log2_binomial(17, 0) == 0.0);
    CHECK_THROWS_AS(log2_binomial(5, 6), std::domain_error);
    CHECK_THROWS_AS(log2_binomial(5, -1), std::domain_error);
}

TEST_CASE("log2_binomial agrees with the exact binomial for n <= 200") {
    for (int n = 0; n <= 200; ++n) {
        for (int k = 0; k <= n; ++k) {
            REQUIRE(std::fabs(log2_binomial(n, k) - log2_big(binomial_exact(n, k))) <= 1e-9);
        }
    }
}

TEST_CASE("log2_big handles wide integers") {
    CHECK(log2_big(BigCount(1)) == 0.0);
    CHECK(log2_big(BigCount(1024)) == doctest::Approx(10.0));
    const BigCount huge = BigCount(1) << 300;
    CHECK(log2_big(huge * 3) == doctest::Approx(300.0 + std::log2(3.0)).epsilon(1e-14));
}

TEST_CASE("ceil_div") {
    CHECK(ceil_div(10015005, 23751) == 422);
    CHECK(ceil_div(35, 7) == 5);
    CHECK(ceil_div(0, 3) == 0);
    CHECK_THROWS_AS(ceil_div(3, 0), std::domain_error);
}

TEST_CASE("binary_entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.25) == doctest::Approx(0.25 * 2.0 + 0.75 * std::log2(4.0 / 3.0)));
    CHECK(binary_entropy(0.25) == doctest::Approx(0.811278).epsilon(1e-6));
    CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(NAN), std::domain_error);
}

TEST_CASE("binary_entropy is symmetric") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng);
        REQUIRE(binary_entropy(x) == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-12));
    }
}

TEST_CASE("is_prime_power examples") {
    CHECK(is_prime_power(9));
    CHECK_FALSE(is_prime_power(1));
    CHECK_FALSE(is_prime_power(12));
    CHECK(is_prime_power(2));
    CHECK(is_prime_power(1024));
    CHECK(is_prime_power(999983));
    CHECK_THROWS_AS(is_prime_power(0), std::domain_error);
    CHECK_THROWS_AS(is_prime_power(-4), std::domain_error);
}

TEST_CASE("is_prime_power agrees with trial factorisation up to 10^6") {
    for (std::int64_t m = 1; m <= 1'000'000; ++m) {
        if (is_prime_power(m) != trial_factor_prime_power(m)) {
            FAIL("disagreement at m = " << m);
        }
    }
}

TEST_CASE("Rational parsing and arithmetic") {
    CHECK(Rational::parse("-1/3") == Rational(-1, 3));
    CHECK(Rational::parse("2/-4") == Rational(-1, 2));
    CHECK(Rational::parse("-0.1") == Rational(-1, 10));
    CHECK(Rational::parse("0") == Rational(0));
    CHECK(Rational::parse("-.5") == Rational(-1, 2));
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("-"), std::invalid_argument);
    CHECK(Rational(1) + Rational(-1, 3) + Rational(-1, 3) == Rational(1, 3));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(-1, 3).str() == "-1/3");
    CHECK(Rational(4, 2).str() == "2");
}

TEST_CASE("Rational::from_double is exact for dyadic values") {
    CHECK(Rational::from_double(-0.5) == Rational(-1, 2));
    CHECK(Rational::from_double(-0.185546875) == Rational(-95, 512));
    CHECK(Rational::from_double(0.0) == Rational(0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.5, -1.0 / 512);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng);
        REQUIRE(Rational::from_double(x).value() == x);
    }
}

TEST_CASE("Rational::from_double rounds values too small for a 64-bit denominator") {
    const double tiny = -1.2345678901234567e-7;
    const Rational r = Rational::from_double(tiny);
    CHECK(r.den() <= (std::int64_t{1} << 62));
    CHECK(std::fabs(r.value() - tiny) <= std::ldexp(1.0, -62));
}

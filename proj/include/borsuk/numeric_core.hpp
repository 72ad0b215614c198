#ifndef BORSUK_NUMERIC_CORE_HPP
#define BORSUK_NUMERIC_CORE_HPP

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

/**
 * @file numeric_core.hpp
 *
 * Exact and floating-point combinatorial primitives: big binomials,
 * log-binomials, binary entropy, prime-power detection and a small
 * exact rational type.
 */

namespace borsuk {

/// Arbitrary-precision non-negative integer. Never rounded.
using BigCount = boost::multiprecision::cpp_int;

/// Exact C(n, k); zero outside 0 <= k <= n.
BigCount binomial_exact(std::int64_t n, std::int64_t k);

/// log2 C(n, k) by summing logarithms. Throws std::domain_error outside 0 <= k <= n.
double log2_binomial(std::int64_t n, std::int64_t k);

/// Base-2 logarithm of a positive big integer (uses the top 64 bits plus the exponent).
double log2_big(const BigCount& value);

/// Ceiling of num / den for den > 0.
BigCount ceil_div(const BigCount& num, const BigCount& den);

/**
 * Binary entropy H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0.
 * Throws std::domain_error outside [0, 1].
 */
double binary_entropy(double x);

/// True iff m = q^e for a prime q and e >= 1. 1 is not a prime power.
bool is_prime_power(std::int64_t m);

/**
 * Normalised fraction num/den with den > 0 and gcd(num, den) = 1.
 *
 * Used for the lifting parameter so that coordinate censuses can be compared
 * exactly.
 */
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Exact when the denominator fits in 62 bits, otherwise rounded to a multiple of 2^-62.
    static Rational from_double(double value);
    /// Accepts "a/b", an integer, or a plain decimal such as "-0.1".
    static Rational parse(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend bool operator==(const Rational& x, const Rational& y) = default;
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace borsuk

#endif

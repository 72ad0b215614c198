#include "borsuk/numeric_core.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace borsuk {

BigCount binomial_exact(std::int64_t n, std::int64_t k) {
    if (n < 0) {
        throw std::domain_error("binomial_exact: n must be non-negative");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigCount result = 1;
    // result stays an exact integer after each step: C(n-k+i, i)
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

double log2_binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) {
        throw std::domain_error("log2_binomial: requires 0 <= k <= n");
    }
    k = std::min(k, n - k);
    double sum = 0.0;
    for (std::int64_t i = 1; i <= k; ++i) {
        sum += std::log2(static_cast<double>(n - k + i)) - std::log2(static_cast<double>(i));
    }
    return sum;
}

double log2_big(const BigCount& value) {
    if (value <= 0) {
        throw std::domain_error("log2_big: value must be positive");
    }
    const auto top_bit = static_cast<long>(boost::multiprecision::msb(value));
    if (top_bit < 64) {
        return std::log2(value.convert_to<double>());
    }
    const long shift = top_bit - 63;
    BigCount head = value >> shift;
    return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

BigCount ceil_div(const BigCount& num, const BigCount& den) {
    if (den <= 0) {
        throw std::domain_error("ceil_div: denominator must be positive");
    }
    BigCount q = num / den;
    if (q * den < num) {
        q += 1;
    }
    return q;
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("binary_entropy: argument outside [0, 1]");
    }
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

bool is_prime_power(std::int64_t m) {
    if (m <= 0) {
        throw std::domain_error("is_prime_power: argument must be positive");
    }
    if (m == 1) {
        return false;
    }
    std::int64_t base = m;
    for (std::int64_t q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            base = q;
            break;
        }
    }
    while (m % base == 0) {
        m /= base;
    }
    return m == 1;
}

namespace {

std::int64_t narrow(__int128 value) {
    if (value > INT64_MAX || value < INT64_MIN) {
        throw std::overflow_error("Rational: 64-bit overflow");
    }
    return static_cast<std::int64_t>(value);
}

Rational make(__int128 num, __int128 den) {
    if (den == 0) {
        throw std::domain_error("Rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
        __int128 r = a % b;
        a = b;
        b = r;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::domain_error("Rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g > 1 ? num / g : num;
    den_ = g > 1 ? den / g : den;
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) {
        throw std::domain_error("Rational::from_double: non-finite value");
    }
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    // value = mantissa * 2^exponent with 53 significant bits in mantissa
    auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    while (exponent < 0 && scaled % 2 == 0) {
        scaled /= 2;
        ++exponent;
    }
    if (exponent >= 0) {
        if (exponent > 62 - 53) {
            throw std::overflow_error("Rational::from_double: magnitude too large");
        }
        return Rational(scaled * (std::int64_t{1} << exponent), 1);
    }
    if (exponent < -62) {
        // scaled has at most 53 bits, so the double round trip is exact before rounding
        scaled = std::llround(std::ldexp(static_cast<double>(scaled), 62 + exponent));
        exponent = -62;
    }
    return Rational(scaled, std::int64_t{1} << (-exponent));
}

Rational Rational::parse(const std::string& text) {
    const auto bad = [&]() { return std::invalid_argument("not a rational number: '" + text + "'"); };
    if (text.empty()) {
        throw bad();
    }
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash != std::string::npos) {
        try {
            const std::int64_t num = std::stoll(text.substr(0, slash), &used);
            if (used != slash) {
                throw bad();
            }
            const std::string den_text = text.substr(slash + 1);
            const std::int64_t den = std::stoll(den_text, &used);
            if (used != den_text.size() || den == 0) {
                throw bad();
            }
            return Rational(num, den);
        } catch (const std::logic_error&) {
            throw bad();
        }
    }
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '-' || text[pos] == '+') {
        negative = text[pos] == '-';
        ++pos;
    }
    __int128 num = 0;
    __int128 den = 1;
    bool digits = false;
    bool point = false;
    for (; pos < text.size(); ++pos) {
        const char ch = text[pos];
        if (ch == '.' && !point) {
            point = true;
            continue;
        }
        if (ch < '0' || ch > '9') {
            throw bad();
        }
        digits = true;
        num = num * 10 + (ch - '0');
        if (point) {
            den *= 10;
        }
        if (num > INT64_MAX || den > INT64_MAX) {
            throw bad();
        }
    }
    if (!digits) {
        throw bad();
    }
    return make(negative ? -num : num, den);
}

std::string Rational::str() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& x, const Rational& y) {
    return make(static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_,
                static_cast<__int128>(x.den_) * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) {
    return make(static_cast<__int128>(x.num_) * y.den_ - static_cast<__int128>(y.num_) * x.den_,
                static_cast<__int128>(x.den_) * y.den_);
}

Rational operator*(const Rational& x, const Rational& y) {
    return make(static_cast<__int128>(x.num_) * y.num_, static_cast<__int128>(x.den_) * y.den_);
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    return static_cast<__int128>(x.num_) * y.den_ <=> static_cast<__int128>(y.num_) * x.den_;
}

}  // namespace borsuk

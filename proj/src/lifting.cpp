#include "borsuk/lifting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace borsuk {

namespace {

// |x|^p with 0^p = 0.
double pow_abs(double x, double p) {
    return x == 0.0 ? 0.0 : std::pow(std::fabs(x), p);
}

std::string format_double(double value) {
    char buffer[64];
    auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::int64_t choose2(std::int64_t m) {
    return m * (m - 1) / 2;
}

}  // namespace

std::string Parameters::describe() const {
    std::ostringstream out;
    out << "n=" << n << " k=" << k << " p=" << format_double(p) << " lambda=" << lambda.str();
    return out.str();
}

std::optional<std::string> first_violated_hypothesis(const Parameters& params) {
    if (!(params.k > 1 && 2 * params.k < params.n)) {
        return "k_range";
    }
    if (params.lambda < Rational(-1, 2) || params.lambda > Rational(0)) {
        return "lambda_range";
    }
    if (!(std::isfinite(params.p) && params.p >= 1.0)) {
        return "p_range";
    }
    return std::nullopt;
}

void require_valid(const Parameters& params) {
    if (auto violated = first_violated_hypothesis(params)) {
        throw std::domain_error("invalid parameters (" + *violated + "): " + params.describe());
    }
}

int CharacteristicVector::weight() const {
    return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::string CharacteristicVector::str() const {
    std::string s;
    s.reserve(bits.size());
    for (auto bit : bits) {
        s.push_back(bit ? '1' : '0');
    }
    return s;
}

int intersection_size(const CharacteristicVector& x, const CharacteristicVector& y) {
    if (x.bits.size() != y.bits.size()) {
        throw std::invalid_argument("intersection_size: length mismatch");
    }
    int t = 0;
    for (std::size_t i = 0; i < x.bits.size(); ++i) {
        t += x.bits[i] & y.bits[i];
    }
    return t;
}

EnumerationCapExceeded::EnumerationCapExceeded(BigCount count, std::int64_t cap)
    : std::runtime_error("enumeration cap exceeded: C(n,k) = " + count.str() +
                         " > cap " + std::to_string(cap)),
      count_(std::move(count)),
      cap_(cap) {}

std::vector<CharacteristicVector> enumerate_V(int n, int k, std::int64_t cap) {
    if (n < 1 || k < 1 || k > n) {
        throw std::domain_error("enumerate_V: requires 1 <= k <= n");
    }
    BigCount total = binomial_exact(n, k);
    if (total > cap) {
        throw EnumerationCapExceeded(std::move(total), cap);
    }
    std::vector<CharacteristicVector> result;
    result.reserve(total.convert_to<std::size_t>());
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) {
        subset[i] = i;
    }
    while (true) {
        CharacteristicVector x{std::vector<std::uint8_t>(n, 0)};
        for (int index : subset) {
            x.bits[index] = 1;
        }
        result.push_back(std::move(x));
        int i = k - 1;
        while (i >= 0 && subset[i] == n - k + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++subset[i];
        for (int j = i + 1; j < k; ++j) {
            subset[j] = subset[j - 1] + 1;
        }
    }
    return result;
}

std::vector<double> lift(const CharacteristicVector& x, double lambda) {
    const std::size_t n = x.bits.size();
    std::vector<double> out;
    out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double xi = x.bits[i];
            const double xj = x.bits[j];
            out.push_back(xi * xj + lambda * (xi + xj));
        }
    }
    return out;
}

std::vector<Rational> lift_exact(const CharacteristicVector& x, const Rational& lambda) {
    const std::size_t n = x.bits.size();
    std::vector<Rational> out;
    out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rational xi(x.bits[i]);
            const Rational xj(x.bits[j]);
            out.push_back(xi * xj + lambda * (xi + xj));
        }
    }
    return out;
}

PairTypeCounts pair_type_counts(int n, int k, int t) {
    if (t < 0 || k < 0 || t > k || 2 * k - t > n) {
        throw std::domain_error("pair_type_counts: requires 0 <= t <= k and 2k - t <= n");
    }
    // outside = positions in neither support, only = positions in exactly one
    const std::int64_t outside = n - 2 * k + t;
    const std::int64_t only = k - t;
    const std::int64_t both = t;
    PairTypeCounts m{};
    m[0][0] = choose2(outside);
    m[0][1] = outside * only;
    m[0][2] = choose2(only);
    m[1][0] = outside * only;
    m[1][1] = only * only + both * outside;
    m[1][2] = both * only;
    m[2][0] = choose2(only);
    m[2][1] = both * only;
    m[2][2] = choose2(both);
    return m;
}

QuadraticForm quadratic_coefficients(int n, int k, double p, double lambda) {
    if (!std::isfinite(p) || p < 1.0) {
        throw std::domain_error("quadratic_coefficients: p must be finite and >= 1");
    }
    const double lam = pow_abs(lambda, p);
    const double one_lam = pow_abs(1.0 + lambda, p);
    const double one_two_lam = pow_abs(1.0 + 2.0 * lambda, p);
    QuadraticForm q;
    q.a = -2.0 * lam - 2.0 * one_lam + one_two_lam;
    q.b = 2.0 * (3.0 * k - n) * lam + 2.0 * k * one_lam + (1.0 - 2.0 * k) * one_two_lam;
    q.c = 2.0 * k * (n - 2.0 * k) * lam + k * (k - 1.0) * one_two_lam;
    if (!(q.a < 0.0)) {
        throw std::logic_error("quadratic_coefficients: degenerate form, a >= 0");
    }
    q.t0 = -q.b / (2.0 * q.a);
    return q;
}

QuadraticForm quadratic_coefficients(const Parameters& params) {
    require_valid(params);
    return quadratic_coefficients(params.n, params.k, params.p, params.lambda_value());
}

double lp_distance(std::span<const double> u, std::span<const double> v, double p) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("lp_distance: length mismatch");
    }
    if (p == kInfinityNorm) {
        double best = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            best = std::max(best, std::fabs(u[i] - v[i]));
        }
        return best;
    }
    if (!(p >= 1.0)) {
        throw std::domain_error("lp_distance: p must be >= 1");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        sum += pow_abs(u[i] - v[i], p);
    }
    return std::pow(sum, 1.0 / p);
}

double distance_from_intersection(int t, const QuadraticForm& q, double p) {
    if (t < 0) {
        throw std::domain_error("distance_from_intersection: t must be non-negative");
    }
    double value = q.evaluate(t);
    if (value < -1e-6) {
        throw std::domain_error("distance_from_intersection: quadratic is negative at t = " +
                                std::to_string(t));
    }
    if (value < 1e-9) {
        value = std::max(value, 0.0);
    }
    return std::pow(value, 1.0 / p);
}

LiftedConfiguration LiftedConfiguration::build(const Parameters& params, std::int64_t cap) {
    LiftedConfiguration config;
    config.params_ = params;
    config.vectors_ = enumerate_V(params.n, params.k, cap);
    config.points_.reserve(config.vectors_.size());
    const double lambda = params.lambda_value();
    for (const auto& x : config.vectors_) {
        config.points_.push_back(lift(x, lambda));
    }
    return config;
}

void LiftedConfiguration::write(std::ostream& out) const {
    out << params_.n << ' ' << params_.k << ' ' << params_.lambda.num() << ' '
        << params_.lambda.den() << '\n';
    for (const auto& point : points_) {
        for (std::size_t i = 0; i < point.size(); ++i) {
            if (i > 0) {
                out << ' ';
            }
            out << format_double(point[i]);
        }
        out << '\n';
    }
}

ConfigurationFile read_configuration(std::istream& in) {
    ConfigurationFile file;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("configuration: missing header");
    }
    std::istringstream header(line);
    std::int64_t num = 0;
    std::int64_t den = 0;
    if (!(header >> file.n >> file.k >> num >> den) || den == 0) {
        throw std::runtime_error("configuration: malformed header '" + line + "'");
    }
    file.lambda = Rational(num, den);
    const std::size_t width = static_cast<std::size_t>(file.n) * (file.n - 1) / 2;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> point;
        point.reserve(width);
        const char* cursor = line.data();
        const char* end = line.data() + line.size();
        while (cursor < end) {
            while (cursor < end && *cursor == ' ') {
                ++cursor;
            }
            if (cursor == end) {
                break;
            }
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(cursor, end, value);
            if (ec != std::errc()) {
                throw std::runtime_error("configuration: bad coordinate in '" + line + "'");
            }
            point.push_back(value);
            cursor = ptr;
        }
        if (point.size() != width) {
            throw std::runtime_error("configuration: point has " + std::to_string(point.size()) +
                                     " coordinates, expected " + std::to_string(width));
        }
        file.points.push_back(std::move(point));
    }
    return file;
}

}  // namespace borsuk

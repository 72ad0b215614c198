#ifndef BORSUK_LIFTING_HPP
#define BORSUK_LIFTING_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "borsuk/numeric_core.hpp"

namespace borsuk {

/// Stand-in for p = infinity in lp_distance. Never accepted by Parameters.
inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// Default limit on |V| for explicit enumeration.
inline constexpr std::int64_t kDefaultEnumerationCap = 10'000'000;

/// One instance (n, k, p, lambda) of the lifted construction.
struct Parameters {
    int n = 0;
    int k = 0;
    double p = 2.0;
    Rational lambda;

    double lambda_value() const { return lambda.value(); }
    /// Dimension of the lifted space, C(n, 2).
    std::int64_t dimension() const { return static_cast<std::int64_t>(n) * (n - 1) / 2; }
    std::string describe() const;

    friend bool operator==(const Parameters&, const Parameters&) = default;
};

/**
 * Returns the name of the first violated hypothesis among
 * "k_range" (1 < k < n/2), "lambda_range" (-1/2 <= lambda <= 0) and
 * "p_range" (finite p >= 1), or nullopt when all hold.
 */
std::optional<std::string> first_violated_hypothesis(const Parameters& params);

/// Throws std::domain_error naming the violated hypothesis.
void require_valid(const Parameters& params);

struct CharacteristicVector {
    std::vector<std::uint8_t> bits;

    int weight() const;
    std::string str() const;
};

/// Number of common unit coordinates.
int intersection_size(const CharacteristicVector& x, const CharacteristicVector& y);

class EnumerationCapExceeded : public std::runtime_error {
public:
    EnumerationCapExceeded(BigCount count, std::int64_t cap);
    const BigCount& count() const { return count_; }
    std::int64_t cap() const { return cap_; }

private:
    BigCount count_;
    std::int64_t cap_;
};

/// All k-subsets of {1..n} as characteristic vectors, subsets in lexicographic order.
std::vector<CharacteristicVector> enumerate_V(int n, int k, std::int64_t cap = kDefaultEnumerationCap);

/// Coordinates x_i x_j + lambda (x_i + x_j), ordered (1,2),(1,3),...,(n-1,n).
std::vector<double> lift(const CharacteristicVector& x, double lambda);
std::vector<Rational> lift_exact(const CharacteristicVector& x, const Rational& lambda);

/// Row = class of y_{i,j}, column = class of x_{i,j}; classes ordered 0, lambda, 1+2lambda.
using PairTypeCounts = std::array<std::array<std::int64_t, 3>, 3>;

/// Census of coordinate pairs for two k-sets meeting in t elements.
PairTypeCounts pair_type_counts(int n, int k, int t);

/// ||x* - y*||_p^p = a t^2 + b t + c with vertex t0 = -b / (2a).
struct QuadraticForm {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double t0 = 0.0;

    double evaluate(double t) const { return (a * t + b) * t + c; }
};

QuadraticForm quadratic_coefficients(const Parameters& params);
/// Same law for a real-valued lambda (used while lambda is being adjusted).
QuadraticForm quadratic_coefficients(int n, int k, double p, double lambda);

/// l_p distance; p = kInfinityNorm gives the max norm.
double lp_distance(std::span<const double> u, std::span<const double> v, double p);

/// (a t^2 + b t + c)^(1/p); tiny negative values (>= -1e-9) are clamped to zero.
double distance_from_intersection(int t, const QuadraticForm& q, double p);

/// Explicit lifted point set {x* : x in V}. Immutable once built.
class LiftedConfiguration {
public:
    static LiftedConfiguration build(const Parameters& params,
                                     std::int64_t cap = kDefaultEnumerationCap);

    const Parameters& params() const { return params_; }
    const std::vector<CharacteristicVector>& vectors() const { return vectors_; }
    const std::vector<std::vector<double>>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    /// Header "n k lambda_num lambda_den", then one point per line.
    void write(std::ostream& out) const;

private:
    Parameters params_;
    std::vector<CharacteristicVector> vectors_;
    std::vector<std::vector<double>> points_;
};

/// Parsed form of the configuration text format.
struct ConfigurationFile {
    int n = 0;
    int k = 0;
    Rational lambda;
    std::vector<std::vector<double>> points;
};

/// Throws std::runtime_error on malformed input.
ConfigurationFile read_configuration(std::istream& in);

}  // namespace borsuk

#endif

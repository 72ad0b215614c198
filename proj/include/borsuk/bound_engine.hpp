#ifndef BORSUK_BOUND_ENGINE_HPP
#define BORSUK_BOUND_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "borsuk/lifting.hpp"
#include "borsuk/numeric_core.hpp"

namespace borsuk {

/// Thrown when the two independent vertex formulas disagree.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Thrown by adjust_lambda when no lambda in [lambda, 0] brackets the target vertex.
class NoBracket : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NamedCheck {
    std::string name;
    bool passed = false;

    friend bool operator==(const NamedCheck&, const NamedCheck&) = default;
};

/**
 * One fully checked application of the lower bound
 *   b(l_p^d) >= ceil(C(n,k) / C(n, k - t1 - 1)),  d = C(n,2).
 *
 * The bound depends only on (n, k, t1). adjusted_lambda is the lambda at which
 * the diameter of the lifted set is realised by pairs meeting in t1 elements.
 */
struct BoundCertificate {
    Parameters params;
    double t0 = 0.0;
    int t1 = 0;
    std::optional<double> adjusted_lambda;
    BigCount numerator;
    BigCount denominator;
    BigCount lower_bound;
    std::int64_t d = 0;
    std::vector<NamedCheck> checks;

    bool all_checks_pass() const;
    friend bool operator==(const BoundCertificate&, const BoundCertificate&) = default;
};

/// Structured refusal naming the first violated hypothesis.
struct Rejection {
    Parameters params;
    std::string reason;
    std::string detail;
};

using BoundResult = std::variant<BoundCertificate, Rejection>;

/**
 * Vertex of the distance parabola, returned as -b/(2a). The closed form
 *   ((3k-n)|l|^p + k|1+l|^p + (1/2-k)|1+2l|^p) / (2|l|^p + 2|1+l|^p - |1+2l|^p)
 * is evaluated alongside and must agree to 1e-9 relative.
 */
double vertex_t0(const Parameters& params);
double vertex_t0(int n, int k, double p, double lambda);

/// The closed-form vertex alone (no cross-check).
double vertex_t0_closed_form(int n, int k, double p, double lambda);

/// Largest t in {1..t_max} with k - t a prime power.
std::optional<int> find_t1(int k, int t_max);

BoundResult theorem1_bound(const Parameters& params);

/**
 * Moves lambda towards 0 until the vertex lies in [t1 - 1/2, t1 + 1/2].
 *
 * Returns lambda unchanged when it already does. Otherwise bisects on
 * vertex(lambda') = t1 between a bracketing lambda and 0, where the vertex is
 * 1/2. If the vertex at lambda is below t1 - 1/2, [lambda, 0] is scanned for a
 * bracketing point first. Throws NoBracket when none exists.
 */
double adjust_lambda(int n, int k, double p, double lambda, int t1);

/// True iff t1 maximises a t^2 + b t + c over t in {0..k} (ties accepted).
bool integer_argmax_check(const QuadraticForm& q, int k, int t1);

struct LambdaGrid {
    /// Grid lambda = -j / (2m) for j = 0..m.
    int m = 512;
};

struct SearchCandidate {
    int n = 0;
    int k = 0;
    Rational lambda;
    int t1 = 0;
    BigCount lower_bound;
};

struct SearchResult {
    BoundCertificate best;
    /// One entry per (k, t1), best first; same ordering as the reduction.
    std::vector<SearchCandidate> ranking;
    std::int64_t evaluated = 0;
};

class NoValidCertificate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest n with C(n, 2) <= d.
int largest_n_for_dimension(std::int64_t d);

/**
 * Best certificate over k in (1, n/2) and the lambda grid, n from
 * largest_n_for_dimension(d_target). Ties go to smaller k, then larger lambda.
 * The result does not depend on the number of workers.
 */
SearchResult search_best_bound(std::int64_t d_target, double p, LambdaGrid grid = {},
                               int parallelism = 1);

}  // namespace borsuk

#endif

#ifndef BORSUK_ORACLES_HPP
#define BORSUK_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "borsuk/bound_engine.hpp"
#include "borsuk/lifting.hpp"

/**
 * @file oracles.hpp
 *
 * Brute-force checks of the closed forms at desk scale. Each oracle works
 * from explicit enumeration and only reads (a, b, c) or the census it is
 * checking, so a wrong closed form shows up as a failed report.
 */

namespace borsuk {

enum class OracleStatus { passed, failed, skipped };

const char* to_string(OracleStatus status);

struct OracleReport {
    std::string oracle_name;
    std::string instance;
    OracleStatus status = OracleStatus::failed;
    double max_error = 0.0;
    std::string detail;
    std::vector<std::string> witnesses;

    bool passed() const { return status == OracleStatus::passed; }
};

/// Largest C(n,k) for the exact family-size solver.
inline constexpr std::int64_t kFamilySolverCap = 200;

/**
 * Compares ||x* - y*||_p^p with a t^2 + b t + c over every pair of the
 * configuration; passes iff the worst gap is <= 1e-9 (1 + |c|).
 * `form` replaces the closed-form coefficients (fault injection).
 */
OracleReport verify_distance_law(const Parameters& params,
                                 std::int64_t cap = kDefaultEnumerationCap,
                                 std::optional<QuadraticForm> form = std::nullopt);

/**
 * Exact diameter by enumeration. Passes iff a pair meeting in t1 elements
 * attains it and every attaining pair meets in an integer maximiser of the
 * quadratic.
 */
OracleReport verify_diameter_realization(const Parameters& params, int t1,
                                         std::int64_t cap = kDefaultEnumerationCap);

class FamilySolverCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Largest family of k-subsets of [n] with no two members meeting in exactly t
 * elements (maximum independent set, branch and bound with greedy colouring
 * bounds). Requires C(n,k) <= 200.
 */
std::int64_t fw_max_family(int n, int k, int t);

/**
 * Diameter at t1, exact family bound <= C(n, k-t1-1), and
 * ceil(C(n,k) / family) >= the certificate's lower bound. Skipped when the
 * bound is rejected. A t1_override that breaks the hypotheses is refused.
 */
OracleReport verify_pigeonhole_chain(const Parameters& params,
                                     std::optional<int> t1_override = std::nullopt,
                                     std::int64_t cap = kDefaultEnumerationCap);

using PairTypeCountsFn = std::function<PairTypeCounts(int, int, int)>;

/**
 * Exact census per point (rational lambda) and symbolic classification of
 * the C(n,2) coordinate pairs for sampled pairs; all pairs when
 * C(n,k) <= exhaustive_limit. Requires 2k <= n.
 */
OracleReport verify_census_and_counts(const Parameters& params, int trials, std::uint64_t seed,
                                      std::int64_t exhaustive_limit = 100,
                                      std::int64_t cap = kDefaultEnumerationCap,
                                      const PairTypeCountsFn& counts = pair_type_counts);

enum class VerifyScope { quick, full };

enum class Fault { none, flip_b_sign };

struct BatchOptions {
    VerifyScope scope = VerifyScope::quick;
    std::uint64_t seed = 20240611;
    std::int64_t enumeration_cap = kDefaultEnumerationCap;
    int census_trials = 200;
    Fault fault = Fault::none;
    int parallelism = 1;
};

/// The standard oracle suite, including negative controls that must fail.
std::vector<OracleReport> run_oracle_batch(const BatchOptions& options);

/// One line per report, "PASS|FAIL|SKIP name [instance] max_error=... detail",
/// followed by indented "witness:" lines.
void write_oracle_log(std::ostream& out, const std::vector<OracleReport>& reports);

/// Flat "key = value" summary of a batch.
void write_oracle_summary(std::ostream& out, const std::vector<OracleReport>& reports);

bool batch_passed(const std::vector<OracleReport>& reports);

}  // namespace borsuk

#endif

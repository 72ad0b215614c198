#include "borsuk/oracles.hpp"

#include <algorithm>
#include <array>
#include <bitset>
#include <cmath>
#include <future>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace borsuk {

namespace {

constexpr double kLawTolerance = 1e-9;
constexpr double kDiameterTolerance = 1e-9;

std::string triple(int n, int k, int t) {
    return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " t=" + std::to_string(t);
}

OracleReport make_report(std::string name, std::string instance) {
    OracleReport report;
    report.oracle_name = std::move(name);
    report.instance = std::move(instance);
    return report;
}

// Integer maximisers of the quadratic over {0..k}.
std::set<int> integer_argmax(const QuadraticForm& q, int k) {
    double best = -INFINITY;
    for (int t = 0; t <= k; ++t) {
        best = std::max(best, q.evaluate(t));
    }
    std::set<int> argmax;
    for (int t = 0; t <= k; ++t) {
        if (q.evaluate(t) >= best - 1e-12 * (1.0 + std::fabs(best))) {
            argmax.insert(t);
        }
    }
    return argmax;
}

std::string join(const std::set<int>& values) {
    std::string out;
    for (int v : values) {
        out += (out.empty() ? "" : ",") + std::to_string(v);
    }
    return "{" + out + "}";
}

}  // namespace

const char* to_string(OracleStatus status) {
    switch (status) {
        case OracleStatus::passed:
            return "PASS";
        case OracleStatus::failed:
            return "FAIL";
        case OracleStatus::skipped:
            return "SKIP";
    }
    return "?";
}

OracleReport verify_distance_law(const Parameters& params, std::int64_t cap,
                                  std::optional<QuadraticForm> form) {
    OracleReport report = make_report("distance_law", params.describe());
    const QuadraticForm q = form ? *form : quadratic_coefficients(params);
    const auto config = LiftedConfiguration::build(params, cap);
    const auto& points = config.points();
    const auto& vectors = config.vectors();
    double worst = 0.0;
    std::size_t worst_i = 0;
    std::size_t worst_j = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i; j < points.size(); ++j) {
            const int t = intersection_size(vectors[i], vectors[j]);
            const double direct = std::pow(lp_distance(points[i], points[j], params.p), params.p);
            const double gap = std::fabs(direct - q.evaluate(t));
            if (gap > worst) {
                worst = gap;
                worst_i = i;
                worst_j = j;
            }
        }
    }
    const double tolerance = kLawTolerance * (1.0 + std::fabs(q.c));
    report.max_error = worst;
    report.status = worst <= tolerance ? OracleStatus::passed : OracleStatus::failed;
    std::ostringstream detail;
    detail << points.size() << " points; tolerance " << tolerance;
    report.detail = detail.str();
    if (!report.passed()) {
        report.witnesses.push_back(vectors[worst_i].str() + " vs " + vectors[worst_j].str());
    }
    return report;
}

OracleReport verify_diameter_realization(const Parameters& params, int t1, std::int64_t cap) {
    OracleReport report =
        make_report("diameter_realization", params.describe() + " t1=" + std::to_string(t1));
    const QuadraticForm q = quadratic_coefficients(params);
    const auto config = LiftedConfiguration::build(params, cap);
    const auto& points = config.points();
    const auto& vectors = config.vectors();

    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    double diameter = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double dist = lp_distance(points[i], points[j], params.p);
            pairs.emplace_back(dist, i, j);
            diameter = std::max(diameter, dist);
        }
    }
    std::set<int> attaining;
    std::string witness;
    for (const auto& [dist, i, j] : pairs) {
        if (dist >= diameter - kDiameterTolerance * (1.0 + diameter)) {
            const int t = intersection_size(vectors[i], vectors[j]);
            attaining.insert(t);
            if (t == t1 && witness.empty()) {
                witness = vectors[i].str() + " vs " + vectors[j].str();
            }
        }
    }
    const std::set<int> argmax = integer_argmax(q, params.k);
    std::set<int> offending;
    std::set_difference(attaining.begin(), attaining.end(), argmax.begin(), argmax.end(),
                        std::inserter(offending, offending.end()));

    const bool t1_attains = attaining.count(t1) > 0;
    report.status = t1_attains && offending.empty() ? OracleStatus::passed : OracleStatus::failed;
    if (t1_attains) {
        report.max_error = std::fabs(diameter - distance_from_intersection(t1, q, params.p));
        report.witnesses.push_back(witness);
    }
    std::ostringstream detail;
    detail << "diameter " << diameter << " attained at intersections " << join(attaining)
           << "; quadratic argmax " << join(argmax);
    if (!t1_attains) {
        detail << "; t1 does not attain";
    }
    if (!offending.empty()) {
        detail << "; offending intersections " << join(offending);
    }
    report.detail = detail.str();
    return report;
}

namespace {

using VertexSet = std::bitset<256>;

class MaxCliqueSolver {
public:
    explicit MaxCliqueSolver(std::vector<VertexSet> adjacency)
        : adj_(std::move(adjacency)), size_(adj_.size()) {}

    std::int64_t solve() {
        VertexSet all;
        for (std::size_t v = 0; v < size_; ++v) {
            all.set(v);
        }
        best_ = 0;
        expand(0, all);
        return best_;
    }

private:
    // Greedy colouring of `candidates`; colour classes give a clique bound.
    void colour(const VertexSet& candidates, std::vector<std::size_t>& order,
                std::vector<int>& bound) const {
        VertexSet uncoloured = candidates;
        int colour_index = 0;
        while (uncoloured.any()) {
            ++colour_index;
            VertexSet available = uncoloured;
            while (available.any()) {
                std::size_t v = 0;
                while (!available.test(v)) {
                    ++v;
                }
                available.reset(v);
                available &= ~adj_[v];
                uncoloured.reset(v);
                order.push_back(v);
                bound.push_back(colour_index);
            }
        }
    }

    void expand(std::int64_t depth, VertexSet candidates) {
        std::vector<std::size_t> order;
        std::vector<int> bound;
        colour(candidates, order, bound);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (depth + bound[i] <= best_) {
                return;
            }
            const std::size_t v = order[i];
            const VertexSet next = candidates & adj_[v];
            if (next.none()) {
                best_ = std::max(best_, depth + 1);
            } else {
                expand(depth + 1, next);
            }
            candidates.reset(v);
        }
    }

    std::vector<VertexSet> adj_;
    std::size_t size_;
    std::int64_t best_ = 0;
};

}  // namespace

std::int64_t fw_max_family(int n, int k, int t) {
    if (n < 1 || k < 1 || k > n || t < 0) {
        throw std::domain_error("fw_max_family: requires 1 <= k <= n and t >= 0");
    }
    const BigCount count = binomial_exact(n, k);
    if (count > kFamilySolverCap) {
        throw FamilySolverCapExceeded("fw_max_family: C(" + std::to_string(n) + "," +
                                      std::to_string(k) + ") = " + count.str() + " exceeds " +
                                      std::to_string(kFamilySolverCap));
    }
    const auto vectors = enumerate_V(n, k);
    // Independent sets of the "meet in exactly t" graph are cliques of its complement.
    std::vector<VertexSet> compatible(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            if (i != j && intersection_size(vectors[i], vectors[j]) != t) {
                compatible[i].set(j);
            }
        }
    }
    return MaxCliqueSolver(std::move(compatible)).solve();
}

OracleReport verify_pigeonhole_chain(const Parameters& params, std::optional<int> t1_override,
                                     std::int64_t cap) {
    OracleReport report = make_report("pigeonhole_chain", params.describe());
    const BoundResult bound = theorem1_bound(params);
    if (const auto* rejection = std::get_if<Rejection>(&bound)) {
        report.status = OracleStatus::skipped;
        report.detail = "bound rejected: " + rejection->reason + " (" + rejection->detail + ")";
        return report;
    }
    const auto& cert = std::get<BoundCertificate>(bound);
    const int t1 = t1_override.value_or(cert.t1);
    report.instance += " t1=" + std::to_string(t1);

    const int k = params.k;
    if (t1 <= 0 || 2 * t1 >= k || !is_prime_power(k - t1)) {
        report.status = OracleStatus::failed;
        report.detail = "refused: t1 = " + std::to_string(t1) +
                        " violates 0 < t1 < k/2 with k - t1 a prime power";
        return report;
    }

    double lambda = cert.adjusted_lambda.value_or(params.lambda_value());
    if (t1 != cert.t1) {
        try {
            lambda = adjust_lambda(params.n, k, params.p, params.lambda_value(), t1);
        } catch (const NoBracket& e) {
            report.status = OracleStatus::failed;
            report.detail = std::string("refused: ") + e.what();
            return report;
        }
    }
    Parameters adjusted = params;
    adjusted.lambda = Rational::from_double(lambda);

    const OracleReport diameter = verify_diameter_realization(adjusted, t1, cap);
    const std::int64_t family = fw_max_family(params.n, k, t1);
    const BigCount allowed = binomial_exact(params.n, k - t1 - 1);
    const BigCount parts = ceil_div(cert.numerator, BigCount(family));

    const bool family_ok = BigCount(family) <= allowed;
    const bool parts_ok = parts >= cert.lower_bound;
    report.max_error = diameter.max_error;
    report.witnesses = diameter.witnesses;
    report.witnesses.push_back("max family " + std::to_string(family) + " <= C(n,k-t1-1) = " +
                               allowed.str());
    report.witnesses.push_back("parts >= " + parts.str() + " >= certificate " +
                               cert.lower_bound.str());
    report.status = diameter.passed() && family_ok && parts_ok ? OracleStatus::passed
                                                               : OracleStatus::failed;
    std::ostringstream detail;
    detail << "adjusted lambda " << lambda << "; diameter " << to_string(diameter.status)
           << "; family bound " << (family_ok ? "holds" : "VIOLATED") << "; parts "
           << (parts_ok ? "cover" : "fall short of") << " certificate";
    report.detail = detail.str();
    return report;
}

OracleReport verify_census_and_counts(const Parameters& params, int trials, std::uint64_t seed,
                                      std::int64_t exhaustive_limit, std::int64_t cap,
                                      const PairTypeCountsFn& counts) {
    OracleReport report = make_report("census_and_counts", params.describe());
    const int n = params.n;
    const int k = params.k;
    if (2 * k > n) {
        throw std::domain_error("verify_census_and_counts: requires 2k <= n");
    }
    const auto vectors = enumerate_V(n, k, cap);

    // Single-point census, exact in the rational lambda. Values may collide
    // (lambda = 0 or lambda = -1/2), so compare as multisets.
    std::map<Rational, std::int64_t> expected_census;
    const Rational& lambda = params.lambda;
    expected_census[Rational(0)] += static_cast<std::int64_t>(n - k) * (n - k - 1) / 2;
    expected_census[lambda] += static_cast<std::int64_t>(k) * (n - k);
    expected_census[Rational(1) + lambda + lambda] += static_cast<std::int64_t>(k) * (k - 1) / 2;
    std::erase_if(expected_census, [](const auto& entry) { return entry.second == 0; });

    std::int64_t mismatches = 0;
    const auto note = [&](const std::string& what) {
        if (mismatches++ == 0) {
            report.witnesses.push_back(what);
        }
    };
    const auto check_point = [&](const CharacteristicVector& x) {
        std::map<Rational, std::int64_t> census;
        for (const auto& value : lift_exact(x, lambda)) {
            ++census[value];
        }
        if (census != expected_census) {
            note("census mismatch at " + x.str());
        }
    };
    const auto check_pair = [&](const CharacteristicVector& x, const CharacteristicVector& y) {
        // Class of x_{i,j} is x_i + x_j: 0 -> "0", 1 -> "lambda", 2 -> "1+2lambda".
        // Every coordinate pair i < j, grouped by the (x_j, y_j) pattern of its right end.
        PairTypeCounts observed{};
        std::array<std::array<std::int64_t, 2>, 2> right{};
        for (int i = n - 1; i >= 0; --i) {
            for (int xj = 0; xj < 2; ++xj) {
                for (int yj = 0; yj < 2; ++yj) {
                    observed[y.bits[i] + yj][x.bits[i] + xj] += right[xj][yj];
                }
            }
            ++right[x.bits[i]][y.bits[i]];
        }
        const int t = intersection_size(x, y);
        if (observed != counts(n, k, t)) {
            note("pair counts mismatch at " + x.str() + " vs " + y.str() + " (t=" +
                 std::to_string(t) + ")");
        }
    };

    std::int64_t pairs_checked = 0;
    const auto total = static_cast<std::int64_t>(vectors.size());
    if (total <= exhaustive_limit) {
        for (const auto& x : vectors) {
            check_point(x);
        }
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            for (std::size_t j = 0; j < vectors.size(); ++j) {
                check_pair(vectors[i], vectors[j]);
                ++pairs_checked;
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, vectors.size() - 1);
        for (int trial = 0; trial < trials; ++trial) {
            const auto& x = vectors[pick(rng)];
            const auto& y = vectors[pick(rng)];
            check_point(x);
            check_point(y);
            check_pair(x, y);
            ++pairs_checked;
        }
    }
    report.max_error = static_cast<double>(mismatches);
    report.status = mismatches == 0 ? OracleStatus::passed : OracleStatus::failed;
    report.detail = std::to_string(pairs_checked) + " ordered pairs checked; " +
                    std::to_string(mismatches) + " mismatches";
    return report;
}

namespace {

// Inverts a report: a negative control passes iff the wrapped oracle failed.
OracleReport negative_control(OracleReport inner) {
    OracleReport report = make_report("negative_control." + inner.oracle_name, inner.instance);
    report.status = inner.status == OracleStatus::failed ? OracleStatus::passed
                                                         : OracleStatus::failed;
    report.max_error = inner.max_error;
    report.detail = "inner oracle " + std::string(to_string(inner.status)) + ": " + inner.detail;
    return report;
}

OracleReport family_report(int n, int k, int t) {
    OracleReport report = make_report("fw_max_family", triple(n, k, t));
    const std::int64_t family = fw_max_family(n, k, t);
    const BigCount allowed = binomial_exact(n, k - t - 1);
    report.status = BigCount(family) <= allowed ? OracleStatus::passed : OracleStatus::failed;
    report.detail = "max family " + std::to_string(family) + ", C(n,k-t-1) = " + allowed.str();
    return report;
}

// First lambda on -1/2, -1/2 + 1/64, ..., 0 with a certificate.
std::optional<Rational> first_certified_lambda(int n, int k, double p) {
    for (int j = 32; j >= 0; --j) {
        const Rational lambda(-j, 64);
        if (std::holds_alternative<BoundCertificate>(theorem1_bound({n, k, p, lambda}))) {
            return lambda;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<OracleReport> run_oracle_batch(const BatchOptions& options) {
    std::vector<std::pair<int, int>> law_instances = {{5, 2}, {7, 3}, {8, 3}, {9, 4}};
    if (options.scope == VerifyScope::full) {
        law_instances.emplace_back(11, 5);
    }
    const std::vector<Rational> lambdas = {Rational(0), Rational(-1, 10), Rational(-1, 3),
                                           Rational(-1, 2)};
    const std::vector<double> ps = {1.0, 1.5, 2.0, 3.0, 7.0};
    const std::int64_t cap = options.scope == VerifyScope::quick
                                 ? std::min<std::int64_t>(500, options.enumeration_cap)
                                 : options.enumeration_cap;

    std::vector<std::function<OracleReport()>> jobs;
    for (const auto& [n, k] : law_instances) {
        for (const auto& lambda : lambdas) {
            for (double p : ps) {
                const Parameters params{n, k, p, lambda};
                std::optional<QuadraticForm> form;
                if (options.fault == Fault::flip_b_sign) {
                    QuadraticForm corrupted = quadratic_coefficients(params);
                    corrupted.b = -corrupted.b;
                    form = corrupted;
                }
                jobs.emplace_back([=] { return verify_distance_law(params, cap, form); });
            }
            const Parameters census_params{n, k, 2.0, lambda};
            jobs.emplace_back([=, seed = options.seed, trials = options.census_trials] {
                return verify_census_and_counts(census_params, trials, seed, 150, cap);
            });
        }
    }

    jobs.emplace_back([] { return family_report(5, 2, 0); });
    jobs.emplace_back([] { return family_report(7, 3, 1); });
    jobs.emplace_back([] { return family_report(8, 3, 1); });

    jobs.emplace_back([cap] {
        const double lambda = adjust_lambda(7, 3, 2.0, -0.5, 1);
        return verify_diameter_realization({7, 3, 2.0, Rational::from_double(lambda)}, 1, cap);
    });
    jobs.emplace_back([cap] {
        const double lambda = adjust_lambda(9, 4, 3.0, -0.5, 2);
        return verify_diameter_realization({9, 4, 3.0, Rational::from_double(lambda)}, 2, cap);
    });

    jobs.emplace_back([cap] { return verify_pigeonhole_chain({5, 2, 2.0, Rational(-1, 2)}, {}, cap); });
    jobs.emplace_back([cap] { return verify_pigeonhole_chain({7, 3, 2.0, Rational(-1, 2)}, {}, cap); });
    jobs.emplace_back([cap] {
        const auto lambda = first_certified_lambda(9, 4, 2.0);
        if (!lambda) {
            OracleReport report = make_report("pigeonhole_chain", "n=9 k=4 p=2");
            report.detail = "no certified lambda on the 1/64 grid";
            return report;
        }
        return verify_pigeonhole_chain({9, 4, 2.0, *lambda}, {}, cap);
    });

    // Negative controls: each oracle must be able to fail.
    jobs.emplace_back([cap] {
        const Parameters params{7, 3, 2.0, Rational(-1, 3)};
        QuadraticForm corrupted = quadratic_coefficients(params);
        corrupted.b = -corrupted.b;
        return negative_control(verify_distance_law(params, cap, corrupted));
    });
    jobs.emplace_back([cap, seed = options.seed] {
        const auto swapped = [](int n, int k, int t) {
            PairTypeCounts m = pair_type_counts(n, k, t);
            std::swap(m[0][0], m[1][1]);
            return m;
        };
        return negative_control(
            verify_census_and_counts({7, 3, 2.0, Rational(-1, 3)}, 50, seed, 150, cap, swapped));
    });
    jobs.emplace_back([cap] {
        return negative_control(verify_diameter_realization({9, 4, 3.0, Rational(-1, 2)}, 1, cap));
    });
    jobs.emplace_back([cap] {
        return negative_control(verify_pigeonhole_chain({7, 3, 2.0, Rational(-1, 2)}, 2, cap));
    });
    jobs.emplace_back([] {
        // The exact solver must exceed a bound that is too small.
        OracleReport inner = make_report("fw_max_family", triple(5, 2, 0) + " bound C(5,0)");
        const std::int64_t family = fw_max_family(5, 2, 0);
        inner.status = family <= 1 ? OracleStatus::passed : OracleStatus::failed;
        inner.detail = "max family " + std::to_string(family) + " vs 1";
        return negative_control(inner);
    });

    std::vector<OracleReport> reports(jobs.size());
    const auto run = [&](std::size_t i) {
        try {
            return jobs[i]();
        } catch (const std::exception& e) {
            OracleReport report = make_report("batch_job_" + std::to_string(i), "");
            report.detail = std::string("exception: ") + e.what();
            return report;
        }
    };
    const std::size_t width = static_cast<std::size_t>(std::max(1, options.parallelism));
    for (std::size_t start = 0; start < jobs.size(); start += width) {
        const std::size_t stop = std::min(jobs.size(), start + width);
        if (width == 1) {
            reports[start] = run(start);
            continue;
        }
        std::vector<std::future<OracleReport>> batch;
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async, run, i));
        }
        for (std::size_t i = start; i < stop; ++i) {
            reports[i] = batch[i - start].get();
        }
    }
    return reports;
}

void write_oracle_log(std::ostream& out, const std::vector<OracleReport>& reports) {
    for (const auto& r : reports) {
        out << to_string(r.status) << ' ' << r.oracle_name << " [" << r.instance
            << "] max_error=" << r.max_error << ' ' << r.detail << '\n';
        for (const auto& w : r.witnesses) {
            out << "    witness: " << w << '\n';
        }
    }
}

void write_oracle_summary(std::ostream& out, const std::vector<OracleReport>& reports) {
    std::int64_t passed = 0;
    std::int64_t failed = 0;
    std::int64_t skipped = 0;
    for (const auto& r : reports) {
        passed += r.status == OracleStatus::passed;
        failed += r.status == OracleStatus::failed;
        skipped += r.status == OracleStatus::skipped;
    }
    out << "oracles = " << reports.size() << '\n'
        << "passed = " << passed << '\n'
        << "failed = " << failed << '\n'
        << "skipped = " << skipped << '\n'
        << "status = " << (failed == 0 ? "pass" : "fail") << '\n';
    for (const auto& r : reports) {
        if (r.status == OracleStatus::failed) {
            out << "failure = " << r.oracle_name << " [" << r.instance << "]\n";
        }
    }
}

bool batch_passed(const std::vector<OracleReport>& reports) {
    return std::none_of(reports.begin(), reports.end(),
                        [](const OracleReport& r) { return r.status == OracleStatus::failed; });
}

}  // namespace borsuk

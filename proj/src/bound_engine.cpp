#include "borsuk/bound_engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <tuple>

namespace borsuk {

namespace {

double pow_abs(double x, double p) {
    return x == 0.0 ? 0.0 : std::pow(std::fabs(x), p);
}

constexpr double kVertexAgreement = 1e-9;
constexpr double kLambdaTolerance = 1e-12;
constexpr int kBracketScanSteps = 1024;

}  // namespace

bool BoundCertificate::all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

double vertex_t0_closed_form(int n, int k, double p, double lambda) {
    const double lam = pow_abs(lambda, p);
    const double one_lam = pow_abs(1.0 + lambda, p);
    const double one_two_lam = pow_abs(1.0 + 2.0 * lambda, p);
    const double numerator = (3.0 * k - n) * lam + k * one_lam + (0.5 - k) * one_two_lam;
    const double denominator = 2.0 * lam + 2.0 * one_lam - one_two_lam;
    return numerator / denominator;
}

double vertex_t0(int n, int k, double p, double lambda) {
    const QuadraticForm q = quadratic_coefficients(n, k, p, lambda);
    const double closed = vertex_t0_closed_form(n, k, p, lambda);
    if (std::fabs(closed - q.t0) > kVertexAgreement * (1.0 + std::fabs(q.t0))) {
        throw InternalInconsistency("vertex formulas disagree: -b/(2a) = " + std::to_string(q.t0) +
                                    ", closed form = " + std::to_string(closed));
    }
    return q.t0;
}

double vertex_t0(const Parameters& params) {
    require_valid(params);
    return vertex_t0(params.n, params.k, params.p, params.lambda_value());
}

std::optional<int> find_t1(int k, int t_max) {
    for (int t = std::min(t_max, k - 1); t >= 1; --t) {
        if (is_prime_power(k - t)) {
            return t;
        }
    }
    return std::nullopt;
}

double adjust_lambda(int n, int k, double p, double lambda, int t1) {
    if (t1 < 1) {
        throw std::domain_error("adjust_lambda: t1 must be at least 1");
    }
    const auto gap = [&](double l) { return vertex_t0(n, k, p, l) - t1; };
    const double start = gap(lambda);
    if (std::fabs(start) <= 0.5) {
        return lambda;
    }
    double lo = lambda;
    if (start < 0.0) {
        // Vertex is not monotone in lambda; look for a point above t1 first.
        bool found = false;
        for (int i = 1; i < kBracketScanSteps; ++i) {
            const double candidate = lambda * (1.0 - static_cast<double>(i) / kBracketScanSteps);
            const double g = gap(candidate);
            if (std::fabs(g) <= 0.5) {
                return candidate;
            }
            if (g > 0.0) {
                lo = candidate;
                found = true;
                break;
            }
        }
        if (!found) {
            throw NoBracket("adjust_lambda: vertex stays below t1 - 1/2 on [lambda, 0] for t1 = " +
                            std::to_string(t1));
        }
    }
    // gap(lo) > 0 and gap(0) = 1/2 - t1 < 0
    double hi = 0.0;
    while (hi - lo > kLambdaTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

bool integer_argmax_check(const QuadraticForm& q, int k, int t1) {
    if (t1 < 0 || t1 > k) {
        return false;
    }
    double best = -INFINITY;
    for (int t = 0; t <= k; ++t) {
        best = std::max(best, q.evaluate(t));
    }
    return q.evaluate(t1) >= best - 1e-12 * (1.0 + std::fabs(best));
}

BoundResult theorem1_bound(const Parameters& params) {
    if (auto violated = first_violated_hypothesis(params)) {
        return Rejection{params, *violated, params.describe()};
    }
    BoundCertificate cert;
    cert.params = params;
    cert.d = params.dimension();
    cert.checks.push_back({"k_range", true});
    cert.checks.push_back({"lambda_range", true});
    cert.checks.push_back({"p_range", true});

    cert.t0 = vertex_t0(params);
    cert.checks.push_back({"t0_formulas_agree", true});

    const int t_max = static_cast<int>(std::floor(cert.t0 + 0.5));
    const auto t1 = find_t1(params.k, t_max);
    if (!t1) {
        return Rejection{params, "t1_existence",
                         "no t in [1, " + std::to_string(t_max) + "] with k - t a prime power"};
    }
    cert.t1 = *t1;
    cert.checks.push_back({"t1_existence", true});
    if (!(2 * cert.t1 < params.k)) {
        return Rejection{params, "t1_below_half_k",
                         "t1 = " + std::to_string(cert.t1) + " is not below k/2"};
    }
    cert.checks.push_back({"t1_below_half_k", true});
    if (cert.t1 <= 0) {
        return Rejection{params, "t1_positive", "t1 = " + std::to_string(cert.t1)};
    }
    cert.checks.push_back({"t1_positive", true});
    cert.checks.push_back({"t1_within_vertex", cert.t1 <= t_max});
    cert.checks.push_back({"k_minus_t1_prime_power", is_prime_power(params.k - cert.t1)});

    try {
        const double adjusted = adjust_lambda(params.n, params.k, params.p,
                                              params.lambda_value(), cert.t1);
        cert.adjusted_lambda = adjusted;
        const QuadraticForm q = quadratic_coefficients(params.n, params.k, params.p, adjusted);
        cert.checks.push_back({"diameter_at_t1", integer_argmax_check(q, params.k, cert.t1)});
    } catch (const NoBracket& e) {
        return Rejection{params, "lambda_adjustment", e.what()};
    }

    cert.numerator = binomial_exact(params.n, params.k);
    cert.denominator = binomial_exact(params.n, params.k - cert.t1 - 1);
    cert.lower_bound = ceil_div(cert.numerator, cert.denominator);
    const bool sound = cert.lower_bound * cert.denominator >= cert.numerator &&
                       (cert.lower_bound - 1) * cert.denominator < cert.numerator;
    cert.checks.push_back({"ratio_ceiling_exact", sound});
    return cert;
}

int largest_n_for_dimension(std::int64_t d) {
    if (d < 0) {
        throw std::domain_error("largest_n_for_dimension: negative dimension");
    }
    std::int64_t n = 1;
    while ((n + 1) * n / 2 <= d) {
        ++n;
    }
    return static_cast<int>(n);
}

namespace {

// Ordering used both for the reduction and the ranking: larger bound first,
// then smaller k, then larger lambda.
bool ranks_before(const BigCount& bound_a, int k_a, const Rational& lambda_a,
                  const BigCount& bound_b, int k_b, const Rational& lambda_b) {
    if (bound_a != bound_b) {
        return bound_a > bound_b;
    }
    if (k_a != k_b) {
        return k_a < k_b;
    }
    return lambda_a > lambda_b;
}

std::vector<BoundCertificate> evaluate_k(int n, int k, double p, const LambdaGrid& grid) {
    std::vector<BoundCertificate> found;
    for (int j = 0; j <= grid.m; ++j) {
        const Parameters params{n, k, p, Rational(-j, 2 * grid.m)};
        auto result = theorem1_bound(params);
        if (auto* cert = std::get_if<BoundCertificate>(&result)) {
            found.push_back(std::move(*cert));
        }
    }
    return found;
}

}  // namespace

SearchResult search_best_bound(std::int64_t d_target, double p, LambdaGrid grid, int parallelism) {
    if (grid.m < 1) {
        throw std::domain_error("search_best_bound: lambda grid needs m >= 1");
    }
    const int n = largest_n_for_dimension(d_target);
    std::vector<int> ks;
    for (int k = 2; 2 * k < n; ++k) {
        ks.push_back(k);
    }

    std::vector<std::vector<BoundCertificate>> per_k(ks.size());
    parallelism = std::max(1, parallelism);
    if (parallelism == 1) {
        for (std::size_t i = 0; i < ks.size(); ++i) {
            per_k[i] = evaluate_k(n, ks[i], p, grid);
        }
    } else {
        // Results are stored by k index, so the merge below is order independent.
        for (std::size_t start = 0; start < ks.size(); start += parallelism) {
            std::vector<std::future<std::vector<BoundCertificate>>> batch;
            for (std::size_t i = start; i < std::min(ks.size(), start + parallelism); ++i) {
                batch.push_back(std::async(std::launch::async, evaluate_k, n, ks[i], p, grid));
            }
            for (std::size_t i = 0; i < batch.size(); ++i) {
                per_k[start + i] = batch[i].get();
            }
        }
    }

    SearchResult result;
    result.evaluated = static_cast<std::int64_t>(ks.size()) * (grid.m + 1);
    std::map<std::pair<int, int>, SearchCandidate> by_k_t1;
    const BoundCertificate* best = nullptr;
    for (const auto& certs : per_k) {
        for (const auto& cert : certs) {
            const Rational& lambda = cert.params.lambda;
            if (!best || ranks_before(cert.lower_bound, cert.params.k, lambda, best->lower_bound,
                                      best->params.k, best->params.lambda)) {
                best = &cert;
            }
            const auto key = std::make_pair(cert.params.k, cert.t1);
            auto it = by_k_t1.find(key);
            if (it == by_k_t1.end() || lambda > it->second.lambda) {
                by_k_t1[key] = SearchCandidate{n, cert.params.k, lambda, cert.t1, cert.lower_bound};
            }
        }
    }
    if (!best) {
        throw NoValidCertificate("no valid certificate for d = " + std::to_string(d_target) +
                                 " (n = " + std::to_string(n) + ")");
    }
    result.best = *best;
    for (auto& [key, candidate] : by_k_t1) {
        result.ranking.push_back(std::move(candidate));
    }
    std::sort(result.ranking.begin(), result.ranking.end(),
              [](const SearchCandidate& x, const SearchCandidate& y) {
                  return ranks_before(x.lower_bound, x.k, x.lambda, y.lower_bound, y.k, y.lambda);
              });
    return result;
}

}  // namespace borsuk

#ifndef BORSUK_ASYMPTOTIC_HPP
#define BORSUK_ASYMPTOTIC_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * @file asymptotic.hpp
 *
 * Growth constant c(p) with b(l_p^d) >= (c(p) + o(1))^sqrt(d).
 *
 * With kappa = k/n and tau = t0/n held fixed as n grows, the bound
 * C(n,k) / C(n, k - t1 - 1) over sqrt(C(n,2)) tends to
 *   log2 c = sqrt(2) * (H(kappa) - H(kappa - tau)),
 * H being the binary entropy.
 */

namespace borsuk {

class Infeasible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct AsymptoticOptimum {
    double p = 0.0;
    double lambda_star = 0.0;
    double kappa_star = 0.0;
    double tau_star = 0.0;
    double c_value = 0.0;
};

/// Limit of t0 / n. Requires 0 < kappa <= 1/2, -1/2 <= lambda <= 0, p >= 1.
double tau_limit(double kappa, double lambda, double p);

/// log2 of c(kappa, lambda, p). Throws Infeasible unless 0 < tau <= kappa/2.
double exponent_log2(double kappa, double lambda, double p);

/// 2^exponent_log2(kappa, lambda, p).
double exponent_c(double kappa, double lambda, double p);

struct OptimizerTrace {
    double grid_best_c = 0.0;
    int refinement_passes = 0;
};

/**
 * Maximises the exponent over 0 < kappa < 1/2, -1/2 <= lambda <= 0 with
 * 0 < tau < kappa/2 strictly: a 1/256 grid, then coordinate-wise
 * golden-section passes in a box that shrinks to 1e-10. Deterministic.
 * Requires 1 <= p <= 64.
 */
AsymptoticOptimum optimize_c(double p, OptimizerTrace* trace = nullptr);

/// ((1 + sqrt 2) / 2)^sqrt 2.
double limit_p_infinity();

struct CurveRow {
    double p = 0.0;
    std::optional<AsymptoticOptimum> optimum;
    std::string error;
};

/// One row per p in input order; a failing p yields a row carrying the error.
std::vector<CurveRow> emit_curve(const std::vector<double>& p_values, int parallelism = 1);

/// "p,c,lambda,kappa,tau" with six decimals; failing rows are skipped.
std::string curve_csv(const std::vector<CurveRow>& rows);

}  // namespace borsuk

#endif

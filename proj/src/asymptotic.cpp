#include "borsuk/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

#include "borsuk/numeric_core.hpp"

namespace borsuk {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kGridSteps = 256;
constexpr double kBoxFloor = 1e-10;
constexpr int kMaxPasses = 4000;

double pow_abs(double x, double p) {
    return x == 0.0 ? 0.0 : std::pow(std::fabs(x), p);
}

double tau_unchecked(double kappa, double lambda, double p) {
    const double lam = pow_abs(lambda, p);
    const double one_lam = pow_abs(1.0 + lambda, p);
    const double one_two_lam = pow_abs(1.0 + 2.0 * lambda, p);
    return ((3.0 * kappa - 1.0) * lam + kappa * one_lam - kappa * one_two_lam) /
           (2.0 * lam + 2.0 * one_lam - one_two_lam);
}

// H(kappa) - H(kappa - tau) on the strictly feasible region, -inf elsewhere.
double interior_objective(double kappa, double lambda, double p) {
    if (!(kappa > 0.0 && kappa < 0.5 && lambda >= -0.5 && lambda <= 0.0)) {
        return kNegInf;
    }
    const double tau = tau_unchecked(kappa, lambda, p);
    if (!(tau > 0.0 && tau < 0.5 * kappa)) {
        return kNegInf;
    }
    return binary_entropy(kappa) - binary_entropy(kappa - tau);
}

// Golden-section maximisation of f on (lo, hi); endpoints are never evaluated.
template <typename F>
double golden_max(F&& f, double lo, double hi) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200 && b - a > 1e-14; ++iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

}  // namespace

double tau_limit(double kappa, double lambda, double p) {
    if (!(kappa > 0.0 && kappa <= 0.5)) {
        throw std::domain_error("tau_limit: kappa must lie in (0, 1/2]");
    }
    if (!(lambda >= -0.5 && lambda <= 0.0)) {
        throw std::domain_error("tau_limit: lambda must lie in [-1/2, 0]");
    }
    if (!(std::isfinite(p) && p >= 1.0)) {
        throw std::domain_error("tau_limit: p must be finite and >= 1");
    }
    return tau_unchecked(kappa, lambda, p);
}

double exponent_log2(double kappa, double lambda, double p) {
    const double tau = tau_limit(kappa, lambda, p);
    if (!(tau > 0.0) || tau > 0.5 * kappa || !(kappa - tau > 0.0)) {
        throw Infeasible("exponent: tau = " + std::to_string(tau) +
                         " outside (0, kappa/2] for kappa = " + std::to_string(kappa));
    }
    return std::sqrt(2.0) * (binary_entropy(kappa) - binary_entropy(kappa - tau));
}

double exponent_c(double kappa, double lambda, double p) {
    return std::exp2(exponent_log2(kappa, lambda, p));
}

AsymptoticOptimum optimize_c(double p, OptimizerTrace* trace) {
    if (!(p >= 1.0 && p <= 64.0)) {
        throw std::domain_error("optimize_c: p must lie in [1, 64]");
    }
    double best = kNegInf;
    double kappa = 0.0;
    double lambda = 0.0;
    for (int i = 1; i < kGridSteps / 2; ++i) {
        for (int j = 0; j <= kGridSteps / 2; ++j) {
            const double kk = static_cast<double>(i) / kGridSteps;
            const double ll = -static_cast<double>(j) / kGridSteps;
            const double value = interior_objective(kk, ll, p);
            if (value > best) {
                best = value;
                kappa = kk;
                lambda = ll;
            }
        }
    }
    if (best == kNegInf) {
        throw Infeasible("optimize_c: no feasible grid point");
    }
    const double grid_best = best;

    double half_width = 1.0 / kGridSteps;
    int passes = 0;
    while (half_width >= kBoxFloor && passes < kMaxPasses) {
        ++passes;
        const double before = best;
        const double kappa_before = kappa;
        const double lambda_before = lambda;

        const double kappa_new = golden_max([&](double x) { return interior_objective(x, lambda, p); },
                                            std::max(0.0, kappa - half_width),
                                            std::min(0.5, kappa + half_width));
        if (const double value = interior_objective(kappa_new, lambda, p); value > best) {
            best = value;
            kappa = kappa_new;
        }
        const double lambda_new = golden_max([&](double x) { return interior_objective(kappa, x, p); },
                                             std::max(-0.5, lambda - half_width),
                                             std::min(0.0, lambda + half_width));
        if (const double value = interior_objective(kappa, lambda_new, p); value > best) {
            best = value;
            lambda = lambda_new;
        }
        // Keep the box while the pass still travels a sizeable part of it.
        const double moved = std::fabs(kappa - kappa_before) + std::fabs(lambda - lambda_before);
        if (moved <= 0.25 * half_width || best - before <= 0.0) {
            half_width *= 0.5;
        }
    }

    if (trace) {
        trace->grid_best_c = std::exp2(std::sqrt(2.0) * grid_best);
        trace->refinement_passes = passes;
    }
    AsymptoticOptimum result;
    result.p = p;
    result.kappa_star = kappa;
    result.lambda_star = lambda;
    result.tau_star = tau_unchecked(kappa, lambda, p);
    result.c_value = std::exp2(std::sqrt(2.0) * best);
    return result;
}

double limit_p_infinity() {
    return std::pow((1.0 + std::sqrt(2.0)) / 2.0, std::sqrt(2.0));
}

std::vector<CurveRow> emit_curve(const std::vector<double>& p_values, int parallelism) {
    std::vector<CurveRow> rows(p_values.size());
    const auto solve = [&](std::size_t i) {
        CurveRow row;
        row.p = p_values[i];
        try {
            row.optimum = optimize_c(p_values[i]);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };
    parallelism = std::max(1, parallelism);
    for (std::size_t start = 0; start < rows.size(); start += parallelism) {
        const std::size_t stop = std::min(rows.size(), start + parallelism);
        if (parallelism == 1) {
            rows[start] = solve(start);
            continue;
        }
        std::vector<std::future<CurveRow>> batch;
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async, solve, i));
        }
        for (std::size_t i = start; i < stop; ++i) {
            rows[i] = batch[i - start].get();
        }
    }
    return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
    std::string out = "p,c,lambda,kappa,tau\n";
    char line[160];
    for (const auto& row : rows) {
        if (!row.optimum) {
            continue;
        }
        const auto& o = *row.optimum;
        std::snprintf(line, sizeof(line), "%.6f,%.6f,%.6f,%.6f,%.6f\n", o.p, o.c_value,
                      o.lambda_star, o.kappa_star, o.tau_star);
        out += line;
    }
    return out;
}

}  // namespace borsuk

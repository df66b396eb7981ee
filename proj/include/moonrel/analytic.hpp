#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "moonrel/architecture.hpp"
#include "moonrel/curve.hpp"

namespace moonrel {

/**
 * Exact binomial coefficient C(n, k) for n <= 64, evaluated in integer
 * arithmetic (Pascal recurrence, no intermediate overflow) and converted
 * to double at the end.
 */
inline double binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw std::domain_error("binomial: need 0 <= k <= n");
    if (n > 64)
        throw std::domain_error("binomial: exact integer evaluation limited to n <= 64");
    if (k > n - k)
        k = n - k;
    std::uint64_t row[65] = {1};
    for (int i = 1; i <= n; ++i)
        for (int j = std::min(i, k); j > 0; --j)
            row[j] += row[j - 1];
    return static_cast<double>(row[k]);
}

/**
 * Reliability of a k-out-of-n block of i.i.d. components, each operating
 * with probability p: the binomial tail sum_{i=k}^{n} C(n,i) p^i (1-p)^(n-i).
 * Whichever tail has fewer terms is summed; the other is obtained by
 * complement.
 */
inline double koon_reliability(int n, int k, double p) {
    if (k < 1 || k > n)
        throw std::domain_error("koon_reliability: need 1 <= k <= n");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("koon_reliability: need p in [0, 1]");
    const double q = 1.0 - p;
    const auto term = [&](int i) {
        return binomial(n, i) * std::pow(p, i) * std::pow(q, n - i);
    };
    if (n - k + 1 <= k) {
        double sum = 0.0;
        for (int i = n; i >= k; --i)
            sum += term(i);
        return sum;
    }
    double lower = 0.0;
    for (int i = 0; i < k; ++i)
        lower += term(i);
    return 1.0 - lower;
}

/**
 * One exponential term of a layer survival function: the k-out-of-n tail
 * with p = e^(-lambda t) expands to sum_d coefficient * e^(-d lambda t).
 */
struct SurvivalTerm {
    int exponent;        // d, multiplies lambda*t
    double coefficient;  // c_d
};

/**
 * Exponential-sum expansion of a k-out-of-n layer survival function:
 * R(t) = sum_{d=k}^{n} c_d e^(-d lambda t) with
 * c_d = (-1)^(d-k) C(n,d) C(d-1,k-1).
 */
inline std::vector<SurvivalTerm> layer_survival_terms(int n, int k) {
    if (k < 1 || k > n)
        throw std::domain_error("layer_survival_terms: need 1 <= k <= n");
    std::vector<SurvivalTerm> terms;
    terms.reserve(n - k + 1);
    for (int d = k; d <= n; ++d) {
        const double sign = ((d - k) % 2 == 0) ? 1.0 : -1.0;
        terms.push_back({d, sign * binomial(n, d) * binomial(d - 1, k - 1)});
    }
    return terms;
}

/**
 * Closed-form system reliability at time t: the layers fail independently,
 * so R(t) factors into the product of two binomial tails with per-component
 * survival e^(-lambda t).
 */
inline double analytic_reliability(const ArchitectureSpec& spec, double t) {
    if (!(t >= 0.0))
        throw std::domain_error("analytic_reliability: need t >= 0");
    const double ps = std::exp(-spec.lambda_sensor * t);
    const double pm = std::exp(-spec.lambda_mcu * t);
    return koon_reliability(spec.n_sensors, spec.s_required, ps) *
           koon_reliability(spec.n_mcus, spec.m_required, pm);
}

/// Mean time to failure of a single k-out-of-n layer with component rate lambda.
inline double layer_mttf(int n, int k, double lambda) {
    if (!(lambda > 0.0))
        throw NonPositiveRate("layer_mttf: rate must be > 0");
    double sum = 0.0;
    for (const SurvivalTerm& term : layer_survival_terms(n, k))
        sum += term.coefficient / (term.exponent * lambda);
    return sum;
}

/**
 * Exact system MTTF. R(t) is a finite sum of e^(-(i lambda_S + j lambda_M) t)
 * terms, so the integral over [0, inf) is evaluated term by term.
 */
inline double mttf(const ArchitectureSpec& spec) {
    const auto sensor = layer_survival_terms(spec.n_sensors, spec.s_required);
    const auto mcu = layer_survival_terms(spec.n_mcus, spec.m_required);
    double sum = 0.0;
    for (const SurvivalTerm& s : sensor)
        for (const SurvivalTerm& m : mcu)
            sum += s.coefficient * m.coefficient /
                   (s.exponent * spec.lambda_sensor + m.exponent * spec.lambda_mcu);
    return sum;
}

/// Samples the closed-form reliability on a time grid.
inline ReliabilityCurve analytic_curve(const ArchitectureSpec& spec,
                                       const std::vector<double>& t_grid) {
    ReliabilityCurve curve{format_label(spec), t_grid, {}, Solver::analytic};
    curve.values.reserve(t_grid.size());
    for (double t : t_grid)
        curve.values.push_back(analytic_reliability(spec, t));
    return curve;
}

}  // namespace moonrel

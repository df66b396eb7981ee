#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "moonrel/analytic.hpp"
#include "moonrel/architecture.hpp"
#include "moonrel/ctmc.hpp"

namespace moonrel {

/**
 * All SooN_S/MooN_M combinations with counts up to the given maxima, in
 * lexicographic (N_S, S, N_M, M) order. The defaults elsewhere cap at
 * three sensors and four MCUs; this imposes no cap of its own.
 */
inline std::vector<ArchitectureSpec> enumerate_architectures(int max_sensors, int max_mcus,
                                                             double lambda_sensor,
                                                             double lambda_mcu) {
    if (max_sensors < 1 || max_mcus < 1)
        throw std::domain_error("enumerate_architectures: maxima must be >= 1");
    std::vector<ArchitectureSpec> specs;
    for (int ns = 1; ns <= max_sensors; ++ns)
        for (int s = 1; s <= ns; ++s)
            for (int nm = 1; nm <= max_mcus; ++nm)
                for (int m = 1; m <= nm; ++m)
                    specs.push_back(validate({ns, s, nm, m, lambda_sensor, lambda_mcu}));
    return specs;
}

/**
 * First strict sign change of a(t) - b(t) on (0, t_max], located by a
 * bracketing scan with step t_max/1000 followed by bisection to 1e-3 h.
 * Touching without crossing yields no result.
 */
inline std::optional<double> crossing_time(const std::function<double(double)>& curve_a,
                                           const std::function<double(double)>& curve_b,
                                           double t_max) {
    if (!(t_max > 0.0))
        throw std::domain_error("crossing_time: need t_max > 0");
    const auto diff = [&](double t) { return curve_a(t) - curve_b(t); };
    if (diff(0.0) < 0.0)
        throw std::domain_error("crossing_time: need a(0) >= b(0)");

    constexpr int kScanSteps = 1000;
    constexpr double kTol = 1e-3;  // hours

    const double step = t_max / kScanSteps;
    double t_prev = 0.0;
    double d_prev = 0.0;  // last nonzero difference seen
    for (int k = 1; k <= kScanSteps; ++k) {
        const double t = k * step;
        const double d = diff(t);
        if (d == 0.0)
            continue;
        if (d_prev != 0.0 && (d_prev > 0.0) != (d > 0.0)) {
            double lo = t_prev, hi = t;
            double d_lo = d_prev;
            while (hi - lo > kTol) {
                const double mid = 0.5 * (lo + hi);
                const double d_mid = diff(mid);
                if (d_mid == 0.0 || (d_mid > 0.0) == (d_lo > 0.0)) {
                    lo = mid;
                    if (d_mid != 0.0)
                        d_lo = d_mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        t_prev = t;
        d_prev = d;
    }
    return std::nullopt;
}

/// One row of a reliability ranking at a fixed time.
struct RankedRow {
    std::string label;
    double reliability;
    int rank;  // 1-based, descending reliability
};

/**
 * Ranks architectures by R(t), highest first; ties break lexicographically
 * by label so the order is deterministic.
 */
inline std::vector<RankedRow> rank_at(const std::vector<ArchitectureSpec>& specs, double t,
                                      Solver solver = Solver::analytic, double eps = 1e-12) {
    std::vector<RankedRow> rows;
    rows.reserve(specs.size());
    for (const ArchitectureSpec& spec : specs) {
        double r;
        if (solver == Solver::ctmc) {
            const StateSpace states = enumerate_states(spec);
            const GeneratorMatrix gen = build_generator(spec, states);
            r = reliability_at(spec, states,
                               solve_transient(gen, initial_all_operating(states), t, eps));
        } else {
            r = analytic_reliability(spec, t);
        }
        rows.push_back({format_label(spec), r, 0});
    }
    std::sort(rows.begin(), rows.end(), [](const RankedRow& a, const RankedRow& b) {
        if (a.reliability != b.reliability)
            return a.reliability > b.reliability;
        return a.label < b.label;
    });
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i].rank = static_cast<int>(i) + 1;
    return rows;
}

/// Per-architecture comparison metrics against a reference configuration.
struct ReportRow {
    std::string label;
    DiagnosisClass sensor_class;
    DiagnosisClass mcu_class;
    bool suitable;
    bool reference;                       // the row is the reference itself
    double mttf_hours;
    std::vector<double> r_at;             // CTMC reliability at each horizon
    std::vector<double> delta_r_vs_ref;   // r_at minus the reference reliability
    std::optional<double> crossing_vs_ref_hours;
    std::vector<int> rank_at;             // rank among the report's rows per horizon
};

struct ComparisonReport {
    std::vector<double> horizons;  // hours
    std::string reference_label;
    std::vector<ReportRow> rows;   // in input (enumeration) order
};

/**
 * Assembles the comparison study: MTTF from the closed form, R at each
 * horizon from the CTMC solver, the diagnosis classification, and the
 * crossing time against the reference located on the analytic curves.
 * Rows may be evaluated concurrently; the report content is independent
 * of the number of threads.
 */
inline ComparisonReport build_report(const std::vector<ArchitectureSpec>& specs,
                                     const std::vector<double>& horizons,
                                     const ArchitectureSpec& reference, double eps = 1e-12,
                                     unsigned threads = 1) {
    for (std::size_t i = 0; i < horizons.size(); ++i)
        if (!(horizons[i] >= 0.0) || (i > 0 && !(horizons[i] > horizons[i - 1])))
            throw std::invalid_argument("build_report: horizons must be ascending and >= 0");
    validate(reference);

    const double t_max = horizons.empty() ? 0.0 : horizons.back();
    const auto reference_at = [&reference](double t) {
        return analytic_reliability(reference, t);
    };

    const auto evaluate = [&](const ArchitectureSpec& spec) {
        ReportRow row;
        row.label = format_label(spec);
        const Diagnosis diag = classify_self_diagnosis(spec);
        row.sensor_class = diag.sensor_layer;
        row.mcu_class = diag.mcu_layer;
        row.suitable = diag.suitable;
        row.reference = spec.n_sensors == reference.n_sensors &&
                        spec.s_required == reference.s_required &&
                        spec.n_mcus == reference.n_mcus &&
                        spec.m_required == reference.m_required;
        row.mttf_hours = mttf(spec);
        row.rank_at.assign(horizons.size(), 0);
        const StateSpace states = enumerate_states(spec);
        const GeneratorMatrix gen = build_generator(spec, states);
        const ProbabilityVector p0 = initial_all_operating(states);
        for (double t : horizons) {
            const double r = reliability_at(spec, states, solve_transient(gen, p0, t, eps));
            row.r_at.push_back(r);
            row.delta_r_vs_ref.push_back(r - reference_at(t));
        }
        if (!row.reference && t_max > 0.0)
            row.crossing_vs_ref_hours = crossing_time(
                [&spec](double t) { return analytic_reliability(spec, t); }, reference_at,
                t_max);
        return row;
    };

    ComparisonReport report{horizons, format_label(reference), {}};
    report.rows.resize(specs.size());
    if (threads <= 1 || specs.size() < 2) {
        for (std::size_t i = 0; i < specs.size(); ++i)
            report.rows[i] = evaluate(specs[i]);
    } else {
        std::vector<std::future<void>> workers;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < threads; ++w)
            workers.push_back(std::async(std::launch::async, [&]() {
                for (std::size_t i = next.fetch_add(1); i < specs.size();
                     i = next.fetch_add(1))
                    report.rows[i] = evaluate(specs[i]);
            }));
        for (auto& worker : workers)
            worker.get();
    }

    // Per-horizon ranks across the report, ties broken by label.
    for (std::size_t h = 0; h < horizons.size(); ++h) {
        std::vector<std::size_t> order(report.rows.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (report.rows[a].r_at[h] != report.rows[b].r_at[h])
                return report.rows[a].r_at[h] > report.rows[b].r_at[h];
            return report.rows[a].label < report.rows[b].label;
        });
        for (std::size_t pos = 0; pos < order.size(); ++pos)
            report.rows[order[pos]].rank_at[h] = static_cast<int>(pos) + 1;
    }
    return report;
}

}  // namespace moonrel

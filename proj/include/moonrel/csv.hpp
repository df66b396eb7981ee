#pragma once

#include <charconv>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "moonrel/analysis.hpp"
#include "moonrel/curve.hpp"
#include "moonrel/montecarlo.hpp"

namespace moonrel {

/// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

// CSV conventions throughout: comma separator, '.' decimal point, LF line
// endings, '#'-prefixed comment lines.

/// Multi-column curve table: t_hours plus one column per curve, all curves
/// sharing the same grid. Column order follows the input order.
inline void write_curve_csv(std::ostream& out, const std::vector<ReliabilityCurve>& curves) {
    if (curves.empty())
        throw std::invalid_argument("write_curve_csv: no curves");
    for (const ReliabilityCurve& c : curves)
        if (c.t_grid != curves.front().t_grid)
            throw std::invalid_argument("write_curve_csv: curves must share one grid");

    out << "t_hours";
    for (const ReliabilityCurve& c : curves)
        out << ',' << c.label;
    out << '\n';
    for (std::size_t i = 0; i < curves.front().t_grid.size(); ++i) {
        out << format_double(curves.front().t_grid[i]);
        for (const ReliabilityCurve& c : curves)
            out << ',' << format_double(c.values[i]);
        out << '\n';
    }
}

inline void write_report_csv(std::ostream& out, const ComparisonReport& report) {
    out << "# reference: " << report.reference_label << '\n';
    out << "label,sensor_class,mcu_class,suitable,mttf_hours";
    for (double t : report.horizons)
        out << ",r_at_" << format_double(t);
    out << ",crossing_vs_ref_hours";
    for (double t : report.horizons)
        out << ",rank_at_" << format_double(t);
    out << '\n';

    for (const ReportRow& row : report.rows) {
        out << row.label << ',' << to_string(row.sensor_class) << ','
            << to_string(row.mcu_class) << ',' << (row.suitable ? "true" : "false") << ','
            << format_double(row.mttf_hours);
        for (double r : row.r_at)
            out << ',' << format_double(r);
        out << ',';
        if (row.crossing_vs_ref_hours)
            out << format_double(*row.crossing_vs_ref_hours);
        for (int rank : row.rank_at)
            out << ',' << rank;
        out << '\n';
    }
}

/// Monte Carlo estimate table with a metadata comment recording the seed,
/// run count and RNG algorithm.
inline void write_mc_csv(std::ostream& out, const std::string& label, const McEstimate& est) {
    out << "# architecture: " << label << '\n';
    out << "# seed: " << est.seed << " runs: " << est.runs << " rng: " << kRngAlgorithm
        << '\n';
    out << "t_hours,r_hat,ci99_halfwidth\n";
    for (std::size_t i = 0; i < est.t_grid.size(); ++i)
        out << format_double(est.t_grid[i]) << ',' << format_double(est.estimate[i]) << ','
            << format_double(est.ci99_halfwidth[i]) << '\n';
}

/// State-space listing with the operational (up-set) marker.
inline void write_states_csv(std::ostream& out, const ArchitectureSpec& spec,
                             const StateSpace& states) {
    out << "index,m,s,operational\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
        const SystemState& st = states[i];
        const bool up = st.m >= spec.m_required && st.s >= spec.s_required;
        out << i << ',' << st.m << ',' << st.s << ',' << (up ? "true" : "false") << '\n';
    }
}

}  // namespace moonrel

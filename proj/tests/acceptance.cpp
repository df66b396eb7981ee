// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Expects the path to the CLI binary as argv[1] for the
// golden-file determinism check.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "moonrel/analysis.hpp"
#include "moonrel/analytic.hpp"
#include "moonrel/architecture.hpp"
#include "moonrel/ctmc.hpp"
#include "moonrel/montecarlo.hpp"

using namespace moonrel;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::vector<double> uniform_grid(double t_max, int points) {
    std::vector<double> grid;
    grid.reserve(points);
    for (int i = 0; i < points; ++i)
        grid.push_back(t_max * i / (points - 1));
    return grid;
}

// 1. CTMC vs closed form: |R_ctmc - R_analytic| <= 1e-9 for all 60
//    architectures on a 50-point grid over [0, 30000] h.
Outcome oracle_equivalence() {
    const auto grid = uniform_grid(30000.0, 50);
    double worst = 0.0;
    for (const auto& spec : enumerate_architectures(3, 4, 1e-5, 1e-4)) {
        const auto curve = sample_curve(spec, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst,
                             std::abs(curve.values[i] - analytic_reliability(spec, grid[i])));
    }
    std::ostringstream detail;
    detail << "max |R_ctmc - R_analytic| = " << worst << " over 60 architectures x 50 points";
    return {worst <= 1e-9, detail.str()};
}

// 2. Monte Carlo concordance: 1e6 runs, 20 fixed seeds, every grid point
//    within 4*sqrt(R(1-R)/runs) of the closed form for >= 99% of
//    (seed, point) pairs. Architectures: the full S3M3 and S3M4 families
//    plus the reference.
Outcome monte_carlo_concordance() {
    std::vector<ArchitectureSpec> set{{1, 1, 1, 1, 1e-5, 1e-4}};
    for (const auto& spec : enumerate_architectures(3, 4, 1e-5, 1e-4))
        if (spec.n_sensors == 3 && (spec.n_mcus == 3 || spec.n_mcus == 4))
            set.push_back(spec);

    const auto grid = uniform_grid(30000.0, 50);
    constexpr std::uint64_t kRuns = 1000000;
    std::uint64_t pairs = 0, within = 0;
    for (const auto& spec : set) {
        std::vector<double> expected;
        expected.reserve(grid.size());
        for (double t : grid)
            expected.push_back(analytic_reliability(spec, t));
        for (std::uint64_t seed = 101; seed <= 120; ++seed) {
            const McEstimate est = estimate_curve(spec, {kRuns, seed, grid});
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double bound =
                    4.0 * std::sqrt(expected[i] * (1.0 - expected[i]) / double(kRuns));
                ++pairs;
                if (std::abs(est.estimate[i] - expected[i]) <= bound)
                    ++within;
            }
        }
    }
    const double fraction = double(within) / double(pairs);
    std::ostringstream detail;
    detail << within << "/" << pairs << " (seed, point) pairs within 4 sigma ("
           << 100.0 * fraction << "%, " << set.size() << " architectures)";
    return {fraction >= 0.99, detail.str()};
}

// 3. S3M3 family ordering: lowest two curves are 3oo3/3oo3 and 2oo3/3oo3,
//    highest two are 1oo3/1oo3 and 2oo3/1oo3, pointwise on a 301-point
//    grid; 2oo3/2oo3 crosses below the reference at a finite time.
Outcome family_ordering() {
    std::vector<ArchitectureSpec> family;
    for (int s = 1; s <= 3; ++s)
        for (int m = 1; m <= 3; ++m)
            family.push_back(validate({3, s, 3, m, 1e-5, 1e-4}));

    const auto grid = uniform_grid(30000.0, 301);
    for (double t : grid) {
        if (t == 0.0)
            continue;  // every curve starts at 1
        std::vector<std::pair<double, std::string>> values;
        for (const auto& spec : family)
            values.emplace_back(analytic_reliability(spec, t), format_label(spec));
        std::sort(values.begin(), values.end());
        const std::set<std::string> lowest{values[0].second, values[1].second};
        const std::set<std::string> highest{values[7].second, values[8].second};
        if (lowest != std::set<std::string>{"3oo3/3oo3", "2oo3/3oo3"})
            return {false, "lowest-two set broken at t = " + std::to_string(t)};
        if (highest != std::set<std::string>{"1oo3/1oo3", "2oo3/1oo3"})
            return {false, "highest-two set broken at t = " + std::to_string(t)};
    }

    const ArchitectureSpec ref{1, 1, 1, 1, 1e-5, 1e-4};
    const ArchitectureSpec a233{3, 2, 3, 2, 1e-5, 1e-4};
    const auto crossing = crossing_time(
        [&](double t) { return analytic_reliability(a233, t); },
        [&](double t) { return analytic_reliability(ref, t); }, 30000.0);
    if (!crossing)
        return {false, "2oo3/2oo3 never crosses the reference within 30000 h"};
    std::ostringstream detail;
    detail << "orderings hold on 300 positive grid points; 2oo3/2oo3 crosses reference at t* = "
           << *crossing << " h";
    return {true, detail.str()};
}

// 4. The 2oo3/2oo4 crossing against the reference comes strictly after the
//    2oo3/2oo3 one (bisection tolerance 1e-3 h).
Outcome crossing_comparison() {
    const ArchitectureSpec ref{1, 1, 1, 1, 1e-5, 1e-4};
    const auto curve = [](const ArchitectureSpec& spec) {
        return [spec](double t) { return analytic_reliability(spec, t); };
    };
    const auto t33 = crossing_time(curve({3, 2, 3, 2, 1e-5, 1e-4}), curve(ref), 30000.0);
    const auto t34 = crossing_time(curve({3, 2, 4, 2, 1e-5, 1e-4}), curve(ref), 30000.0);
    if (!t33 || !t34)
        return {false, "expected both crossings within 30000 h"};
    std::ostringstream detail;
    detail << "t*(2oo3/2oo4) = " << *t34 << " h > t*(2oo3/2oo3) = " << *t33 << " h";
    return {*t34 > *t33, detail.str()};
}

// 5. koon(4,2,p) > koon(3,2,p) strictly on a 999-point grid in (0,1).
Outcome two_out_of_four_dominance() {
    double min_gap = 1.0;
    for (int i = 1; i <= 999; ++i) {
        const double p = i / 1000.0;
        const double gap = koon_reliability(4, 2, p) - koon_reliability(3, 2, p);
        min_gap = std::min(min_gap, gap);
        if (!(gap > 0.0))
            return {false, "dominance violated at p = " + std::to_string(p)};
    }
    std::ostringstream detail;
    detail << "strict on all 999 points, smallest margin " << min_gap;
    return {true, detail.str()};
}

// 6. Invariant bundle: stochasticity within 1e-12, curve monotonicity
//    within 1e-10, strictly upper-triangular generators, up-set containment
//    monotonicity, and MTTF(1oo1/1oo1) = 9090.909... within 1e-6 relative.
Outcome invariant_suite() {
    const auto specs = enumerate_architectures(3, 4, 1e-5, 1e-4);
    const auto grid50 = uniform_grid(30000.0, 50);

    for (const auto& spec : specs) {
        const StateSpace states = enumerate_states(spec);
        const GeneratorMatrix gen = build_generator(spec, states);
        const ProbabilityVector p0 = initial_all_operating(states);
        for (double t : grid50) {
            const ProbabilityVector pt = solve_transient(gen, p0, t);
            double sum = 0.0;
            for (double v : pt.p)
                sum += v;
            if (std::abs(sum - 1.0) > 1e-12)
                return {false, "stochasticity broken for " + format_label(spec)};
        }
        for (std::size_t i = 0; i < gen.dim(); ++i) {
            const auto [first, last] = gen.row(i);
            for (const auto* e = first; e != last; ++e)
                if (e->col <= i)
                    return {false, "generator not upper triangular for " + format_label(spec)};
        }
    }

    const auto grid301 = uniform_grid(30000.0, 301);
    for (const auto& spec : specs) {
        const auto curve = sample_curve(spec, grid301);
        for (std::size_t i = 1; i < curve.values.size(); ++i)
            if (curve.values[i] > curve.values[i - 1] + 1e-10)
                return {false, "curve not monotone for " + format_label(spec)};
    }

    for (const auto& spec : specs)
        for (double t : grid50) {
            const double r = analytic_reliability(spec, t);
            if (spec.s_required > 1) {
                ArchitectureSpec relaxed = spec;
                relaxed.s_required -= 1;
                if (analytic_reliability(relaxed, t) < r)
                    return {false, "up-set containment broken relaxing S of " +
                                       format_label(spec)};
            }
            if (spec.m_required > 1) {
                ArchitectureSpec relaxed = spec;
                relaxed.m_required -= 1;
                if (analytic_reliability(relaxed, t) < r)
                    return {false, "up-set containment broken relaxing M of " +
                                       format_label(spec)};
            }
        }

    const double reference_mttf = mttf({1, 1, 1, 1, 1e-5, 1e-4});
    const double expected = 9090.909090909091;
    if (std::abs(reference_mttf - expected) > 1e-6 * expected)
        return {false, "MTTF(1oo1/1oo1) = " + std::to_string(reference_mttf)};

    std::ostringstream detail;
    detail << "stochasticity, triangularity, monotonicity, containment, MTTF(1oo1/1oo1) = "
           << reference_mttf << " h";
    return {true, detail.str()};
}

std::string run_capture(const std::string& command) {
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe)
        return {};
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), n);
    pclose(pipe);
    return output;
}

// 7. The compare subcommand is byte-deterministic across invocations and
//    thread counts.
Outcome golden_determinism(const std::string& cli) {
    if (cli.empty())
        return {false, "path to the CLI binary was not supplied"};
    const std::string a = run_capture(cli + " compare");
    const std::string b = run_capture(cli + " compare");
    const std::string c = run_capture(cli + " compare --threads 4");
    if (a.empty())
        return {false, "compare produced no output"};
    std::ostringstream detail;
    detail << a.size() << " bytes, identical across two runs and --threads 4";
    return {a == b && a == c, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle equivalence (CTMC vs closed form, tol 1e-9)", oracle_equivalence},
        {"Monte Carlo concordance (1e6 runs, 20 seeds, 4-sigma)", monte_carlo_concordance},
        {"S3M3 survival ordering and reference crossing", family_ordering},
        {"2oo3/2oo4 crossing later than 2oo3/2oo3", crossing_comparison},
        {"koon(4,2,p) > koon(3,2,p) on (0,1)", two_out_of_four_dominance},
        {"invariant suite", invariant_suite},
        {"golden-file determinism of compare", [&cli]() { return golden_determinism(cli); }},
    };

    bool all_pass = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome{false, "exception"};
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %zu: %s :: %s [%.2f s]\n",
                    outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    outcome.detail.c_str(), seconds);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}

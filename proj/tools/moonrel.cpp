// moonrel command line: reliability analysis of SooN_S/MooN_M sensor/MCU
// architectures. Subcommands: curve, compare, dot, mc, states.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moonrel/analysis.hpp"
#include "moonrel/analytic.hpp"
#include "moonrel/architecture.hpp"
#include "moonrel/csv.hpp"
#include "moonrel/ctmc.hpp"
#include "moonrel/montecarlo.hpp"
#include "moonrel/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputeError = 1;
constexpr int kExitUsageError = 2;

struct Options {
    double lambda_s = 1e-5;  // 1/h
    double lambda_m = 1e-4;  // 1/h
    double t_max = 30000.0;  // h
    int points = 301;
    std::string solver = "ctmc";
    std::uint64_t runs = 100000;
    std::uint64_t seed = 42;
    int max_sensors = 3;
    int max_mcus = 4;
    unsigned threads = 1;
    std::string out_path;
    std::string format = "csv";
    std::vector<std::string> archs;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> uniform_grid(double t_max, int points) {
    if (points < 2)
        throw UsageError("curve outputs need --points >= 2");
    if (!(t_max > 0.0))
        throw UsageError("--tmax must be > 0");
    std::vector<double> grid;
    grid.reserve(points);
    for (int i = 0; i < points; ++i)
        grid.push_back(t_max * i / (points - 1));
    return grid;
}

void write_output(const Options& opt, const std::string& content) {
    if (opt.out_path.empty()) {
        std::cout << content;
        if (!std::cout)
            throw std::runtime_error("writing to stdout failed");
        return;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open output file: " + opt.out_path);
    file << content;
    if (!file)
        throw std::runtime_error("writing failed: " + opt.out_path);
}

std::vector<moonrel::ArchitectureSpec> parse_archs(const Options& opt) {
    std::vector<moonrel::ArchitectureSpec> specs;
    specs.reserve(opt.archs.size());
    for (const std::string& label : opt.archs)
        specs.push_back(moonrel::parse_label(label, opt.lambda_s, opt.lambda_m));
    return specs;
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (opt.format == f)
            return;
    throw UsageError("--format " + opt.format + " is not valid for this subcommand");
}

void cmd_curve(const Options& opt) {
    require_format(opt, {"csv", "svg"});
    const auto specs = parse_archs(opt);
    const auto grid = uniform_grid(opt.t_max, opt.points);

    std::vector<moonrel::ReliabilityCurve> curves;
    curves.reserve(specs.size());
    for (const auto& spec : specs)
        curves.push_back(opt.solver == "analytic" ? moonrel::analytic_curve(spec, grid)
                                                  : moonrel::sample_curve(spec, grid));

    std::ostringstream body;
    if (opt.format == "svg")
        body << moonrel::render_curve_svg(curves);
    else
        moonrel::write_curve_csv(body, curves);
    write_output(opt, body.str());
}

void cmd_compare(const Options& opt) {
    require_format(opt, {"csv"});
    if (!(opt.t_max > 0.0))
        throw UsageError("--tmax must be > 0");
    const auto specs = moonrel::enumerate_architectures(opt.max_sensors, opt.max_mcus,
                                                        opt.lambda_s, opt.lambda_m);
    const moonrel::ArchitectureSpec reference{1, 1, 1, 1, opt.lambda_s, opt.lambda_m};
    // Quarter-horizon snapshots of the service life.
    const std::vector<double> horizons{opt.t_max * 0.25, opt.t_max * 0.5, opt.t_max * 0.75,
                                       opt.t_max};
    const auto report =
        moonrel::build_report(specs, horizons, reference, 1e-12, opt.threads);

    std::ostringstream body;
    moonrel::write_report_csv(body, report);
    write_output(opt, body.str());
}

void cmd_dot(const Options& opt) {
    require_format(opt, {"csv", "dot"});  // csv is the default; dot output regardless
    const auto specs = parse_archs(opt);
    write_output(opt, moonrel::export_dot(specs.front()));
}

void cmd_mc(const Options& opt) {
    require_format(opt, {"csv"});
    const auto specs = parse_archs(opt);
    moonrel::McConfig cfg{opt.runs, opt.seed, uniform_grid(opt.t_max, opt.points)};
    const auto estimate = moonrel::estimate_curve(specs.front(), cfg);

    std::ostringstream body;
    moonrel::write_mc_csv(body, moonrel::format_label(specs.front()), estimate);
    write_output(opt, body.str());
}

void cmd_states(const Options& opt) {
    require_format(opt, {"csv"});
    const auto specs = parse_archs(opt);
    std::ostringstream body;
    moonrel::write_states_csv(body, specs.front(), moonrel::enumerate_states(specs.front()));
    write_output(opt, body.str());
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Reliability analysis of k-out-of-n sensor/MCU architectures"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config")->description("key=value config file; flags take precedence");
    app.allow_config_extras(false);

    app.add_option("--lambda-s", opt.lambda_s, "Sensor failure rate, 1/h")
        ->capture_default_str();
    app.add_option("--lambda-m", opt.lambda_m, "MCU failure rate, 1/h")
        ->capture_default_str();
    app.add_option("--tmax", opt.t_max, "Time horizon, h")->capture_default_str();
    app.add_option("--points", opt.points, "Grid points for curve outputs")
        ->capture_default_str();
    app.add_option("--solver", opt.solver, "Reliability solver")
        ->check(CLI::IsMember({"ctmc", "analytic"}))
        ->capture_default_str();
    app.add_option("--runs", opt.runs, "Monte Carlo runs")
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--max-sensors", opt.max_sensors, "Sensor count cap for enumeration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--max-mcus", opt.max_mcus, "MCU count cap for enumeration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--threads", opt.threads, "Worker threads for compare")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out", opt.out_path, "Output path (default: stdout)");
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "svg", "dot"}))
        ->capture_default_str();

    auto* curve = app.add_subcommand("curve", "Sample reliability curves R(t)");
    curve->add_option("arch", opt.archs, "Architecture labels, e.g. 2oo3/2oo4")->required();
    auto* compare = app.add_subcommand("compare", "Enumerate and rank architectures");
    auto* dot = app.add_subcommand("dot", "Emit the Markov phase diagram in DOT format");
    dot->add_option("arch", opt.archs, "Architecture label")->expected(1)->required();
    auto* mc = app.add_subcommand("mc", "Monte Carlo survival estimate");
    mc->add_option("arch", opt.archs, "Architecture label")->expected(1)->required();
    auto* states = app.add_subcommand("states", "List the Markov state space");
    states->add_option("arch", opt.archs, "Architecture label")->expected(1)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsageError;
    }

    try {
        if (!(opt.lambda_s > 0.0) || !(opt.lambda_m > 0.0))
            throw UsageError("failure rates must be > 0");
        if (curve->parsed())
            cmd_curve(opt);
        else if (compare->parsed())
            cmd_compare(opt);
        else if (dot->parsed())
            cmd_dot(opt);
        else if (mc->parsed())
            cmd_mc(opt);
        else if (states->parsed())
            cmd_states(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const moonrel::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const moonrel::ThresholdOutOfRange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const moonrel::NonPositiveRate& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputeError;
    }
    return kExitOk;
}

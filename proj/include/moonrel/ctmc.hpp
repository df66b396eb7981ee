#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "moonrel/architecture.hpp"
#include "moonrel/curve.hpp"

namespace moonrel {

/// Thrown when a transient solve is asked of an all-zero generator that is
/// not the trivial single-state chain.
struct DegenerateGenerator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One Markov state: m operating MCUs, s operating sensors.
struct SystemState {
    int m;
    int s;

    friend bool operator==(const SystemState&, const SystemState&) = default;
};

/**
 * The (N_M+1)(N_S+1) states of the pure-death chain, ordered to match the
 * probability vector layout: s descends from N_S to 0 in blocks, and within
 * each block m descends from N_M to 0. State 0 is (N_M, N_S), the last
 * state is the absorbing (0, 0).
 */
class StateSpace {
  public:
    StateSpace(int n_mcus, int n_sensors) : n_mcus_(n_mcus), n_sensors_(n_sensors) {
        states_.reserve(static_cast<std::size_t>(n_mcus + 1) * (n_sensors + 1));
        for (int s = n_sensors; s >= 0; --s)
            for (int m = n_mcus; m >= 0; --m)
                states_.push_back(SystemState{m, s});
    }

    std::size_t size() const { return states_.size(); }
    const std::vector<SystemState>& states() const { return states_; }
    const SystemState& operator[](std::size_t i) const { return states_[i]; }

    std::size_t index_of(int m, int s) const {
        if (m < 0 || m > n_mcus_ || s < 0 || s > n_sensors_)
            throw std::out_of_range("StateSpace::index_of: state outside space");
        return static_cast<std::size_t>(n_sensors_ - s) * (n_mcus_ + 1) + (n_mcus_ - m);
    }

    int n_mcus() const { return n_mcus_; }
    int n_sensors() const { return n_sensors_; }

  private:
    int n_mcus_;
    int n_sensors_;
    std::vector<SystemState> states_;
};

inline StateSpace enumerate_states(const ArchitectureSpec& spec) {
    return StateSpace(spec.n_mcus, spec.n_sensors);
}

/**
 * Row-compressed transition-rate matrix of the chain. Each state (m, s) has
 * at most two departures, (m-1, s) at rate m*lambda_M and (m, s-1) at rate
 * s*lambda_S; the diagonal carries the negated departure sum, so every row
 * sums to zero. Under the StateSpace ordering all off-diagonal entries sit
 * strictly above the diagonal.
 */
class GeneratorMatrix {
  public:
    struct Entry {
        std::size_t col;
        double rate;
    };

    explicit GeneratorMatrix(std::size_t dim)
        : diagonal_(dim, 0.0), row_ptr_(dim + 1, 0) {}

    std::size_t dim() const { return diagonal_.size(); }
    double diagonal(std::size_t row) const { return diagonal_[row]; }

    /// Off-diagonal entries of one row.
    std::pair<const Entry*, const Entry*> row(std::size_t i) const {
        return {entries_.data() + row_ptr_[i], entries_.data() + row_ptr_[i + 1]};
    }

    /// Uniformization rate: the largest departure rate in the chain.
    double uniformization_rate() const {
        double rate = 0.0;
        for (double d : diagonal_)
            rate = std::max(rate, -d);
        return rate;
    }

    /// Appends a row; rows must be added in order 0..dim-1.
    void set_row(std::size_t i, double diag, std::initializer_list<Entry> off_diag) {
        diagonal_[i] = diag;
        for (const Entry& e : off_diag)
            entries_.push_back(e);
        row_ptr_[i + 1] = entries_.size();
    }

  private:
    std::vector<double> diagonal_;
    std::vector<Entry> entries_;
    std::vector<std::size_t> row_ptr_;
};

inline GeneratorMatrix build_generator(const ArchitectureSpec& spec, const StateSpace& states) {
    GeneratorMatrix gen(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto [m, s] = states[i];
        const double departure = m * spec.lambda_mcu + s * spec.lambda_sensor;
        if (m > 0 && s > 0)
            gen.set_row(i, -departure,
                        {{states.index_of(m - 1, s), m * spec.lambda_mcu},
                         {states.index_of(m, s - 1), s * spec.lambda_sensor}});
        else if (m > 0)
            gen.set_row(i, -departure, {{states.index_of(m - 1, s), m * spec.lambda_mcu}});
        else if (s > 0)
            gen.set_row(i, -departure, {{states.index_of(m, s - 1), s * spec.lambda_sensor}});
        else
            gen.set_row(i, 0.0, {});  // (0,0) is absorbing
    }
    return gen;
}

/// State probabilities aligned to a StateSpace, stamped with their time.
struct ProbabilityVector {
    std::vector<double> p;
    double t = 0.0;  // hours
};

/// All probability mass on the all-operating state (N_M, N_S).
inline ProbabilityVector initial_all_operating(const StateSpace& states) {
    ProbabilityVector pv{std::vector<double>(states.size(), 0.0), 0.0};
    pv.p[0] = 1.0;
    return pv;
}

namespace detail {

// One uniformization step: acc = sum_k Poisson(k; rate*t) (K^T)^k w, with
// K = I + Q/rate, truncated once the accumulated Poisson mass reaches
// 1 - eps. w is consumed as scratch.
inline void uniformize_step(const GeneratorMatrix& gen, double rate, double t, double eps,
                            std::vector<double>& w, std::vector<double>& acc,
                            std::vector<double>& scratch) {
    const std::size_t n = gen.dim();
    const double a = rate * t;
    double term = std::exp(-a);  // Poisson(0)
    double accumulated = term;
    for (std::size_t j = 0; j < n; ++j)
        acc[j] = term * w[j];
    for (int k = 1; accumulated < 1.0 - eps; ++k) {
        // scratch = K^T w, scattering each row's mass over its successors
        for (std::size_t j = 0; j < n; ++j)
            scratch[j] = (1.0 + gen.diagonal(j) / rate) * w[j];
        for (std::size_t i = 0; i < n; ++i) {
            const auto [first, last] = gen.row(i);
            for (const auto* e = first; e != last; ++e)
                scratch[e->col] += (e->rate / rate) * w[i];
        }
        w.swap(scratch);
        term *= a / k;
        accumulated += term;
        for (std::size_t j = 0; j < n; ++j)
            acc[j] += term * w[j];
        if (term == 0.0)
            break;  // weights underflowed; nothing more can accumulate
    }
}

}  // namespace detail

/**
 * Transient solve P(t) = exp(A^T t) P0 by uniformization (Jensen's method).
 *
 * With rate L = max |diagonal| the DTMC K = I + A/L is stochastic, and the
 * matrix exponential becomes a Poisson-weighted sum over powers of K. The
 * sum is truncated once the cumulative Poisson weight exceeds 1 - eps, which
 * bounds the truncation error by eps componentwise; the result is then
 * renormalized so the entries sum to exactly one. Large L*t is handled by
 * splitting the interval into equal substeps. Unconditionally stable, and
 * each evaluation starts from t = 0, so results depend only on t.
 */
inline ProbabilityVector solve_transient(const GeneratorMatrix& gen,
                                         const ProbabilityVector& p0, double t,
                                         double eps = 1e-12) {
    const std::size_t n = gen.dim();
    if (p0.p.size() != n)
        throw std::invalid_argument("solve_transient: vector/generator dimension mismatch");
    if (!(t >= 0.0))
        throw std::domain_error("solve_transient: need t >= 0");
    if (!(eps > 0.0 && eps <= 1e-6))
        throw std::domain_error("solve_transient: need eps in (0, 1e-6]");

    const double rate = gen.uniformization_rate();
    if (rate == 0.0) {
        if (n == 1)
            return ProbabilityVector{p0.p, t};  // already absorbed in (0,0)
        throw DegenerateGenerator("solve_transient: zero uniformization rate");
    }
    if (t == 0.0)
        return ProbabilityVector{p0.p, 0.0};

    // Keep the Poisson parameter per substep moderate.
    const int steps = std::max(1, static_cast<int>(std::ceil(rate * t / 500.0)));
    const double dt = t / steps;
    const double step_eps = eps / steps;

    std::vector<double> w = p0.p;
    std::vector<double> acc(n), scratch(n);
    for (int step = 0; step < steps; ++step) {
        detail::uniformize_step(gen, rate, dt, step_eps, w, acc, scratch);
        for (std::size_t j = 0; j < n; ++j)
            acc[j] = std::max(acc[j], 0.0);
        const double total = std::accumulate(acc.begin(), acc.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            acc[j] /= total;
        w.swap(acc);
    }
    return ProbabilityVector{std::move(w), t};
}

/// Eq.-style reliability readout: total probability of the operational
/// up-set {m >= M, s >= S}.
inline double reliability_at(const ArchitectureSpec& spec, const StateSpace& states,
                             const ProbabilityVector& pv) {
    if (pv.p.size() != states.size())
        throw std::invalid_argument("reliability_at: vector/state-space size mismatch");
    double r = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].m >= spec.m_required && states[i].s >= spec.s_required)
            r += pv.p[i];
    return r;
}

/**
 * Samples R(t) on an ascending grid. Every point is an independent solve
 * from t = 0; there is no step-chaining error and points may be evaluated
 * in any order.
 */
inline ReliabilityCurve sample_curve(const ArchitectureSpec& spec,
                                     const std::vector<double>& t_grid, double eps = 1e-12) {
    if (t_grid.empty())
        throw std::invalid_argument("sample_curve: empty time grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        if (!(t_grid[i] >= 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
            throw std::invalid_argument("sample_curve: grid must be ascending and >= 0");

    const StateSpace states = enumerate_states(spec);
    const GeneratorMatrix gen = build_generator(spec, states);
    const ProbabilityVector p0 = initial_all_operating(states);

    ReliabilityCurve curve{format_label(spec), t_grid, {}, Solver::ctmc};
    curve.values.reserve(t_grid.size());
    for (double t : t_grid)
        curve.values.push_back(reliability_at(spec, states, solve_transient(gen, p0, t, eps)));
    return curve;
}

/**
 * Phase diagram of the chain in DOT format. Nodes are labeled "m,s",
 * edges carry symbolic rates ("3λM", "2λS") and operational (up-set)
 * states are drawn with a double border.
 */
inline std::string export_dot(const ArchitectureSpec& spec) {
    const StateSpace states = enumerate_states(spec);
    const auto node = [](const SystemState& st) {
        return "\"" + std::to_string(st.m) + "," + std::to_string(st.s) + "\"";
    };
    const auto rate_label = [](int count, const char* symbol) {
        return (count > 1 ? std::to_string(count) : std::string()) + symbol;
    };

    std::string dot = "digraph phase_diagram {\n  rankdir=LR;\n  node [shape=ellipse];\n";
    for (const SystemState& st : states.states()) {
        dot += "  " + node(st);
        if (st.m >= spec.m_required && st.s >= spec.s_required)
            dot += " [peripheries=2]";
        dot += ";\n";
    }
    for (const SystemState& st : states.states()) {
        if (st.m > 0)
            dot += "  " + node(st) + " -> " + node({st.m - 1, st.s}) + " [label=\"" +
                   rate_label(st.m, "λM") + "\"];\n";
        if (st.s > 0)
            dot += "  " + node(st) + " -> " + node({st.m, st.s - 1}) + " [label=\"" +
                   rate_label(st.s, "λS") + "\"];\n";
    }
    dot += "}\n";
    return dot;
}

}  // namespace moonrel

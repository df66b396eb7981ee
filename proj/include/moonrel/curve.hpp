#pragma once

#include <string>
#include <vector>

namespace moonrel {

/// Which computation path produced a curve.
enum class Solver {
    ctmc,
    analytic,
    montecarlo,
};

inline const char* to_string(Solver s) {
    switch (s) {
        case Solver::ctmc: return "ctmc";
        case Solver::analytic: return "analytic";
        case Solver::montecarlo: return "montecarlo";
    }
    return "?";
}

/// R(t) sampled on a time grid, tagged with the producing solver.
struct ReliabilityCurve {
    std::string label;           // "SooN_S/MooN_M"
    std::vector<double> t_grid;  // hours, ascending
    std::vector<double> values;  // R(t_grid[i]), in [0, 1]
    Solver solver = Solver::ctmc;
};

}  // namespace moonrel

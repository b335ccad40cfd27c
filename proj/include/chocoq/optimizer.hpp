#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chocoq {

/// Derivative-free minimizer configuration. `max_iters` bounds objective
/// evaluations per restart beyond the initial simplex, so the total budget
/// is restarts * (max_iters + dim + 1) evaluations.
struct OptimizerConfig {
    int max_iters = 100;
    int restarts = 1;
    uint64_t seed = 0;
    double initial_value = 0.1;   // restart 0 starts at this constant point
    double restart_lo = 0.0;      // later restarts draw uniformly from
    double restart_hi = 3.14159265358979323846; // [restart_lo, restart_hi)
    double initial_step = 0.5;    // simplex edge offset
    double tolerance = 1e-8;      // simplex diameter stop
};

struct OptTraceEntry {
    int iteration = 0; // global evaluation index across restarts
    std::vector<double> theta;
    double value = 0;
};

struct OptTrace {
    std::vector<OptTraceEntry> entries;
    std::vector<double> best_theta;
    double best_value = 0;
    int evaluations = 0;
    std::vector<std::string> diagnostics; // aborted restarts etc.
};

/// Nelder-Mead (reflection 1.0, expansion 2.0, contraction 0.5, shrink 0.5)
/// over an even-dimensional parameter space. Deterministic under a fixed
/// config. A non-finite objective value aborts the current restart with a
/// diagnostic; remaining restarts still run.
OptTrace optimize(const std::function<double(const std::vector<double>&)>& objective_fn, int dim,
                  const OptimizerConfig& cfg);

} // namespace chocoq

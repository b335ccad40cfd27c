#pragma once

#include <optional>
#include <string>

#include "chocoq/circuit.hpp"
#include "chocoq/elimination.hpp"
#include "chocoq/optimizer.hpp"
#include "chocoq/statevector.hpp"

namespace chocoq {

enum class Method { ChocoQ, Penalty, Cyclic };

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

enum class ArgNorm { L2, L1 };

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One solver run. `layers` of 0 picks the method default: 1 for the
/// commute-driver method (its serialized driver already spans every mixing
/// direction), 7 for the baselines.
struct SolverSpec {
    Method method = Method::ChocoQ;
    int layers = 0;
    long long shots = 10'000;
    uint64_t seed = 0;
    int eliminate = 0;         // commute-driver method only
    double lambda_pen = 10.0;  // penalty baseline
    double lambda_arg = 10.0;  // ARG metric weight
    ArgNorm arg_norm = ArgNorm::L2;
    OptimizerConfig optimizer{};
    std::optional<Bits> initial_assignment; // overrides the feasibility search
    bool use_fastpath = true;
    ExecPolicy policy = ExecPolicy::Parallel;

    int effective_layers() const {
        if (layers > 0) return layers;
        return method == Method::ChocoQ ? 1 : 7;
    }
};

struct OracleResult {
    Rational optimal_value;         // native direction
    std::vector<Bits> optimal_set;  // all feasible optima
    long long feasible_count = 0;
};

/// Exhaustive ground truth with constraint-propagation pruning. Capped at
/// 30 variables.
OracleResult brute_force_oracle(const Problem& p);

struct Metrics {
    double success_rate = 0;
    double in_constraints_rate = 0;
    std::optional<double> arg; // unset when f(x_opt) = 0 or nothing feasible
};

/// success = fraction of shots hitting the optimal set; in-constraints =
/// fraction feasible; ARG = |E[f(x) + lambda * ||Cx - c||] / f(x_opt) - 1|
/// with f in native direction and the residual norm Euclidean (or L1).
Metrics compute_metrics(const SampleSet& samples, const OracleResult& oracle, const Problem& p,
                        double lambda_arg = 10.0, ArgNorm norm = ArgNorm::L2);

struct PhaseTimes {
    double compile_ms = 0; // basis + decomposition + circuit assembly
    double execute_ms = 0; // simulation + parameter optimization + sampling
};

struct RunReport {
    std::string method;
    int layers = 0;
    long long shots = 0;
    uint64_t seed = 0;
    int num_qubits = 0;
    int num_subcircuits = 1;
    double success_rate = 0;
    double in_constraints_rate = 0;
    std::optional<double> arg;
    SampleSet samples;
    long long depth_logical = 0;
    long long depth_estimated = 0;
    std::map<std::string, long long> gate_counts;
    OptTrace opt_trace;
    double internal_expectation = 0;  // minimize orientation
    double objective_expectation = 0; // native direction
    PhaseTimes wall;
};

/// Runs one solver end to end: build Hamiltonians and circuit, optimize the
/// 2L parameters against the exact statevector expectation, sample the
/// optimized state, and score against the brute-force oracle.
RunReport solve(const Problem& p, const SolverSpec& spec);

/// Solves each feasible sub-instance of the plan independently, splits the
/// shot budget equally among them, extends sampled bitstrings with the
/// eliminated assignment, and recomputes metrics against the original
/// problem's oracle.
RunReport solve_with_elimination(const Problem& p, const SolverSpec& spec,
                                 const EliminationPlan& plan);

} // namespace chocoq

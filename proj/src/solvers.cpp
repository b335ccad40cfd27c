#include "chocoq/solvers.hpp"

#include <chrono>
#include <cmath>
#include <unordered_set>

#include "chocoq/bits.hpp"
#include "chocoq/prng.hpp"

namespace chocoq {

std::string method_name(Method m) {
    switch (m) {
        case Method::ChocoQ: return "chocoq";
        case Method::Penalty: return "penalty";
        case Method::Cyclic: return "cyclic";
    }
    return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
    if (name == "chocoq") return Method::ChocoQ;
    if (name == "penalty") return Method::Penalty;
    if (name == "cyclic") return Method::Cyclic;
    return std::nullopt;
}

OracleResult brute_force_oracle(const Problem& p) {
    if (p.num_vars > 30) throw std::invalid_argument("oracle capped at 30 variables");
    OracleResult result;
    bool have_best = false;
    const bool maximize = p.objective.direction == Direction::Maximize;
    const long long budget = 8LL << p.num_vars;
    bool complete = enumerate_feasible(p, budget, [&](const Bits& x) {
        ++result.feasible_count;
        Rational value = evaluate_objective(p, x);
        bool better = !have_best || (maximize ? result.optimal_value < value : value < result.optimal_value);
        if (better) {
            result.optimal_value = value;
            result.optimal_set.clear();
            result.optimal_set.push_back(x);
            have_best = true;
        } else if (value == result.optimal_value) {
            result.optimal_set.push_back(x);
        }
        return true;
    });
    if (!complete) throw std::runtime_error("oracle enumeration budget exhausted");
    return result;
}

Metrics compute_metrics(const SampleSet& samples, const OracleResult& oracle, const Problem& p,
                        double lambda_arg, ArgNorm norm) {
    if (samples.shots <= 0 || samples.counts.empty())
        throw std::invalid_argument("metrics need a nonempty sample set");

    std::unordered_set<std::string> optimal;
    for (const auto& x : oracle.optimal_set) optimal.insert(bits_to_string(x));

    long long success = 0, feasible = 0;
    double weighted_sum = 0;
    for (const auto& [bitstring, count] : samples.counts) {
        Bits x = bits_from_string(bitstring);
        if (static_cast<int>(x.size()) != p.num_vars)
            throw std::invalid_argument("sample length does not match problem");
        if (optimal.count(bitstring)) success += count;
        double residual_norm = 0;
        bool ok = true;
        for (const auto& row : p.constraints.rows()) {
            long long sum = -row.rhs;
            for (int i = 0; i < p.num_vars; ++i)
                if (x[static_cast<size_t>(i)]) sum += row.coeffs[static_cast<size_t>(i)];
            if (sum != 0) ok = false;
            residual_norm += norm == ArgNorm::L2 ? static_cast<double>(sum * sum)
                                                 : static_cast<double>(std::llabs(sum));
        }
        if (norm == ArgNorm::L2) residual_norm = std::sqrt(residual_norm);
        if (ok) feasible += count;
        weighted_sum += static_cast<double>(count) *
                        (evaluate_objective(p, x).to_double() + lambda_arg * residual_norm);
    }

    Metrics m;
    m.success_rate = static_cast<double>(success) / static_cast<double>(samples.shots);
    m.in_constraints_rate = static_cast<double>(feasible) / static_cast<double>(samples.shots);
    if (oracle.feasible_count > 0 && !oracle.optimal_value.is_zero()) {
        double expectation = weighted_sum / static_cast<double>(samples.shots);
        m.arg = std::abs(expectation / oracle.optimal_value.to_double() - 1.0);
    }
    return m;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Bits initial_assignment(const Problem& p, const SolverSpec& spec) {
    if (spec.initial_assignment) {
        if (!check_feasible(p, *spec.initial_assignment))
            throw SolverError("supplied initial assignment violates the constraints");
        return *spec.initial_assignment;
    }
    auto found = find_feasible(p);
    if (!found) throw SolverError("no feasible initial assignment found");
    return found->bits;
}

Circuit build_penalty_circuit(const Problem& p, std::shared_ptr<const ObjectiveDiagonal> pen_diag,
                              int layers) {
    Circuit c;
    c.num_qubits = p.num_vars;
    c.num_layers = layers;
    for (int q = 1; q <= p.num_vars; ++q) c.gates.push_back({GateKind::H, {q}});
    for (int l = 0; l < layers; ++l) {
        Gate phase{GateKind::ObjPhase, {}, AngleRef::param(l)};
        phase.diagonal = pen_diag;
        c.gates.push_back(std::move(phase));
        // RX(beta) mixer on every qubit, expressed as H RZ(beta) H.
        for (int q = 1; q <= p.num_vars; ++q) {
            c.gates.push_back({GateKind::H, {q}});
            c.gates.push_back({GateKind::RZ, {q}, AngleRef::param(layers + l)});
            c.gates.push_back({GateKind::H, {q}});
        }
    }
    return c;
}

Circuit build_cyclic_circuit(const Problem& p, std::shared_ptr<const ObjectiveDiagonal> diag,
                             int layers, const Bits& x_star) {
    const std::vector<CyclicChain> chains = build_cyclic_driver(p);

    // Exponentiate each chain's XY Hamiltonian on its involved qubits only.
    struct PreparedChain {
        std::vector<int> involved;
        std::shared_ptr<const dense::HermitianEigen> eigen;
    };
    std::vector<PreparedChain> prepared;
    for (const auto& chain : chains) {
        if (chain.pairs.empty()) continue; // single-variable constraint, identity mixer
        const int k = static_cast<int>(chain.involved.size());
        if (k > 10) throw SolverError("cyclic mixer capped at 10 involved qubits per constraint");
        std::vector<std::pair<int, int>> local_pairs;
        auto local_of = [&](int q) {
            for (int i = 0; i < k; ++i)
                if (chain.involved[static_cast<size_t>(i)] == q) return i + 1;
            throw std::logic_error("chain pair outside involved set");
        };
        for (auto [a, b] : chain.pairs) local_pairs.emplace_back(local_of(a), local_of(b));
        auto eigen = std::make_shared<dense::HermitianEigen>(
            dense::hermitian_eigen(dense::xy_chain_dense(local_pairs, k)));
        prepared.push_back({chain.involved, std::move(eigen)});
    }

    Circuit c;
    c.num_qubits = p.num_vars;
    c.num_layers = layers;
    for (int q = 1; q <= p.num_vars; ++q)
        if (x_star[static_cast<size_t>(q - 1)]) c.gates.push_back({GateKind::X, {q}});
    for (int l = 0; l < layers; ++l) {
        Gate phase{GateKind::ObjPhase, {}, AngleRef::param(l)};
        phase.diagonal = diag;
        c.gates.push_back(std::move(phase));
        for (const auto& chain : prepared) {
            Gate g{GateKind::ExpXY, chain.involved, AngleRef::param(layers + l)};
            g.generator = chain.eigen;
            c.gates.push_back(std::move(g));
        }
    }
    return c;
}

struct PipelineResult {
    Circuit circuit;
    Bits x_star;
    OptTrace trace;
    Statevector final_state;
    double compile_ms = 0;
    double execute_ms = 0;
};

PipelineResult run_pipeline(const Problem& p, const SolverSpec& spec) {
    const int L = spec.effective_layers();
    PipelineResult out;

    auto t_compile = Clock::now();
    switch (spec.method) {
        case Method::ChocoQ: {
            ConstraintBasis basis = solve_basis(p);
            std::vector<DriverTerm> terms = build_driver_terms(basis);
            auto diag = std::make_shared<ObjectiveDiagonal>(build_objective_diagonal(p, spec.policy));
            out.x_star = initial_assignment(p, spec);
            out.circuit = assemble_chocoq_circuit(p, diag, terms, L, out.x_star);
            break;
        }
        case Method::Penalty: {
            auto pen = std::make_shared<ObjectiveDiagonal>(
                build_penalty_objective(p, spec.lambda_pen, spec.policy));
            out.x_star.assign(static_cast<size_t>(p.num_vars), 0); // uniform init, prep is H layer
            out.circuit = build_penalty_circuit(p, pen, L);
            break;
        }
        case Method::Cyclic: {
            auto diag = std::make_shared<ObjectiveDiagonal>(build_objective_diagonal(p, spec.policy));
            out.x_star = initial_assignment(p, spec);
            out.circuit = build_cyclic_circuit(p, diag, L, out.x_star);
            break;
        }
    }
    out.compile_ms = ms_since(t_compile);

    // The optimizer sees the exact statevector expectation of the circuit's
    // own diagonal (penalty included for the penalty baseline); shots only
    // enter the final reported metrics.
    const ObjectiveDiagonal* opt_diag = nullptr;
    for (const auto& g : out.circuit.gates)
        if (g.kind == GateKind::ObjPhase) {
            opt_diag = g.diagonal.get();
            break;
        }
    ObjectiveDiagonal fallback;
    if (opt_diag == nullptr) {
        fallback = build_objective_diagonal(p, spec.policy);
        opt_diag = &fallback;
    }

    auto t_exec = Clock::now();
    // Every circuit prepares its own initial state from |0..0>.
    Statevector init = prepare_basis_state(p.num_vars, Bits(static_cast<size_t>(p.num_vars), 0));
    auto objective_fn = [&](const std::vector<double>& theta) {
        Statevector sv = simulate(out.circuit, ParameterVector::from_flat(theta), init,
                                  spec.use_fastpath, spec.policy);
        return expectation_diagonal(sv, *opt_diag, spec.policy);
    };

    OptimizerConfig cfg = spec.optimizer;
    cfg.seed = derive_seed(spec.seed, "optimizer");
    out.trace = optimize(objective_fn, 2 * L, cfg);

    out.final_state = simulate(out.circuit, ParameterVector::from_flat(out.trace.best_theta), init,
                               spec.use_fastpath, spec.policy);
    out.execute_ms = ms_since(t_exec);
    return out;
}

void fill_depths(RunReport& report, const Circuit& c) {
    DepthReport logical = depth_and_counts(c, DepthMode::Logical);
    DepthReport estimated = depth_and_counts(c, DepthMode::EstimatedBasic);
    report.depth_logical = std::max(report.depth_logical, logical.depth);
    report.depth_estimated = std::max(report.depth_estimated, estimated.depth);
    for (const auto& [kind, count] : logical.counts) report.gate_counts[kind] += count;
}

} // namespace

RunReport solve(const Problem& p, const SolverSpec& spec) {
    if (spec.method == Method::ChocoQ && spec.eliminate > 0) {
        ConstraintBasis basis = solve_basis(p);
        EliminationPlan plan = build_elimination_plan(p, basis, spec.eliminate);
        return solve_with_elimination(p, spec, plan);
    }

    RunReport report;
    report.method = method_name(spec.method);
    report.layers = spec.effective_layers();
    report.shots = spec.shots;
    report.seed = spec.seed;
    report.num_qubits = p.num_vars;

    PipelineResult run = run_pipeline(p, spec);
    report.wall.compile_ms = run.compile_ms;

    auto t_sample = Clock::now();
    report.samples = sample(run.final_state, spec.shots, derive_seed(spec.seed, "sampling"));
    report.wall.execute_ms = run.execute_ms + ms_since(t_sample);

    report.opt_trace = std::move(run.trace);
    report.internal_expectation = report.opt_trace.best_value;
    report.objective_expectation = p.objective.direction == Direction::Maximize
                                       ? -report.internal_expectation
                                       : report.internal_expectation;
    fill_depths(report, run.circuit);

    OracleResult oracle = brute_force_oracle(p);
    Metrics m = compute_metrics(report.samples, oracle, p, spec.lambda_arg, spec.arg_norm);
    report.success_rate = m.success_rate;
    report.in_constraints_rate = m.in_constraints_rate;
    report.arg = m.arg;
    return report;
}

RunReport solve_with_elimination(const Problem& p, const SolverSpec& spec,
                                 const EliminationPlan& plan) {
    RunReport report;
    report.method = method_name(spec.method);
    report.layers = spec.effective_layers();
    report.seed = spec.seed;
    report.num_qubits = p.num_vars - static_cast<int>(plan.eliminated_vars.size());

    // First pass: which assignments of the eliminated variables admit a
    // feasible seed at all.
    std::vector<size_t> runnable;
    std::vector<Bits> seeds;
    for (size_t s = 0; s < plan.sub_instances.size(); ++s) {
        const SubInstance& sub = plan.sub_instances[s];
        if (sub.trivially_infeasible) continue;
        auto seed_bits = find_feasible(sub.reduced);
        if (!seed_bits) continue;
        runnable.push_back(s);
        seeds.push_back(seed_bits->bits);
    }
    if (runnable.empty()) throw SolverError("every sub-instance of the elimination plan is infeasible");

    const long long shots_per = std::max<long long>(1, spec.shots / static_cast<long long>(runnable.size()));
    report.num_subcircuits = static_cast<int>(runnable.size());

    SampleSet pooled;
    for (size_t r = 0; r < runnable.size(); ++r) {
        const SubInstance& sub = plan.sub_instances[runnable[r]];
        SolverSpec sub_spec = spec;
        sub_spec.eliminate = 0;
        sub_spec.shots = shots_per;
        sub_spec.seed = derive_seed(spec.seed, "sub-instance-" + std::to_string(runnable[r]));
        sub_spec.initial_assignment = seeds[r];

        PipelineResult run = run_pipeline(sub.reduced, sub_spec);
        report.wall.compile_ms += run.compile_ms;

        auto t_sample = Clock::now();
        SampleSet samples = sample(run.final_state, shots_per, derive_seed(sub_spec.seed, "sampling"));
        report.wall.execute_ms += run.execute_ms + ms_since(t_sample);

        for (const auto& [bitstring, count] : samples.counts) {
            Bits full = recombine(plan, runnable[r], bits_from_string(bitstring));
            pooled.counts[bits_to_string(full)] += count;
        }
        pooled.shots += samples.shots;

        for (auto& entry : run.trace.entries) {
            entry.iteration = report.opt_trace.evaluations + entry.iteration;
            report.opt_trace.entries.push_back(std::move(entry));
        }
        report.opt_trace.evaluations += run.trace.evaluations;
        if (report.opt_trace.best_theta.empty() || run.trace.best_value < report.opt_trace.best_value) {
            report.opt_trace.best_value = run.trace.best_value;
            report.opt_trace.best_theta = run.trace.best_theta;
        }
        fill_depths(report, run.circuit);
    }

    report.shots = pooled.shots;
    report.samples = std::move(pooled);
    report.internal_expectation = report.opt_trace.best_value;
    report.objective_expectation = p.objective.direction == Direction::Maximize
                                       ? -report.internal_expectation
                                       : report.internal_expectation;

    OracleResult oracle = brute_force_oracle(p);
    Metrics m = compute_metrics(report.samples, oracle, p, spec.lambda_arg, spec.arg_norm);
    report.success_rate = m.success_rate;
    report.in_constraints_rate = m.in_constraints_rate;
    report.arg = m.arg;
    return report;
}

} // namespace chocoq

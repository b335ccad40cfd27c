#include "chocoq/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chocoq/bits.hpp"
#include "chocoq/json_io.hpp"
#include "chocoq/prng.hpp"
#include "chocoq/solvers.hpp"

namespace chocoq {

namespace {

namespace fs = std::filesystem;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct CommonOpts {
    std::string methods = "chocoq";
    int layers = 0;
    long long shots = 10'000;
    uint64_t seed = 0;
    int eliminate = 0;
    double lambda_pen = 10.0;
    double lambda_arg = 10.0;
    std::string arg_norm = "l2";
    int max_iters = 100;
    int restarts = 3;
    std::string out_dir = ".";
    bool timing = false;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--methods,--method", opts.methods, "comma-separated: chocoq,penalty,cyclic");
    cmd->add_option("--layers", opts.layers, "ansatz layers (0 = method default)");
    cmd->add_option("--shots", opts.shots, "measurement shots for the final metrics");
    cmd->add_option("--seed", opts.seed, "master seed; all randomness derives from it");
    cmd->add_option("--eliminate", opts.eliminate, "variables to eliminate classically (chocoq)");
    cmd->add_option("--lambda-pen", opts.lambda_pen, "penalty coefficient (penalty method)");
    cmd->add_option("--lambda-arg", opts.lambda_arg, "ARG metric weight");
    cmd->add_option("--arg-norm", opts.arg_norm, "residual norm in ARG: l2 or l1")
        ->check(CLI::IsMember({"l2", "l1"}));
    cmd->add_option("--max-iters", opts.max_iters, "optimizer evaluations per restart");
    cmd->add_option("--restarts", opts.restarts, "optimizer restarts");
    cmd->add_option("--out-dir", opts.out_dir, "directory for JSON reports and CSV");
    cmd->add_flag("--timing", opts.timing,
                  "write measured wall times (off by default so outputs are byte-reproducible)");
    cmd->add_option("--jobs", opts.jobs, "independent runs to execute concurrently")
        ->check(CLI::PositiveNumber);
}

std::vector<SolverSpec> specs_from(const CommonOpts& opts) {
    std::vector<SolverSpec> specs;
    for (const auto& name : split_list(opts.methods, ',')) {
        auto method = method_from_name(name);
        if (!method) throw CLI::ValidationError("--methods", "unknown method: " + name);
        SolverSpec spec;
        spec.method = *method;
        spec.layers = opts.layers;
        spec.shots = opts.shots;
        spec.seed = opts.seed;
        spec.eliminate = *method == Method::ChocoQ ? opts.eliminate : 0;
        spec.lambda_pen = opts.lambda_pen;
        spec.lambda_arg = opts.lambda_arg;
        spec.arg_norm = opts.arg_norm == "l1" ? ArgNorm::L1 : ArgNorm::L2;
        spec.optimizer.max_iters = opts.max_iters;
        spec.optimizer.restarts = opts.restarts;
        specs.push_back(spec);
    }
    return specs;
}

const char* kCsvHeader =
    "benchmark,method,layers,shots,seed,success_rate,in_constraints_rate,arg,"
    "depth_logical,depth_estimated,iters,wall_time_ms,wall_compile_ms,wall_exec_ms\n";

std::string csv_row(const std::string& benchmark, const RunReport& r, bool timing) {
    std::ostringstream row;
    double compile = timing ? r.wall.compile_ms : 0.0;
    double execute = timing ? r.wall.execute_ms : 0.0;
    row << benchmark << ',' << r.method << ',' << r.layers << ',' << r.shots << ',' << r.seed << ','
        << format_double(r.success_rate) << ',' << format_double(r.in_constraints_rate) << ','
        << (r.arg ? format_double(*r.arg) : "") << ',' << r.depth_logical << ',' << r.depth_estimated
        << ',' << r.opt_trace.evaluations << ',' << format_double(compile + execute) << ','
        << format_double(compile) << ',' << format_double(execute) << '\n';
    return row.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path.string());
    out << content;
}

struct NamedRun {
    std::string benchmark;
    Problem problem;
    SolverSpec spec;
};

int execute_runs(const std::vector<NamedRun>& runs, const CommonOpts& opts) {
    fs::create_directories(opts.out_dir);

    // Runs are independent; batches of --jobs execute concurrently, but the
    // CSV keeps the declared run order regardless of completion order.
    std::vector<RunReport> reports(runs.size());
    const size_t jobs = static_cast<size_t>(std::max(1, opts.jobs));
    for (size_t base = 0; base < runs.size(); base += jobs) {
        std::vector<std::future<RunReport>> batch;
        for (size_t i = base; i < std::min(runs.size(), base + jobs); ++i)
            batch.push_back(std::async(std::launch::async, [&runs, i] {
                return solve(runs[i].problem, runs[i].spec);
            }));
        for (size_t i = 0; i < batch.size(); ++i) reports[base + i] = batch[i].get();
    }

    std::ostringstream csv;
    csv << kCsvHeader;
    for (size_t i = 0; i < runs.size(); ++i) {
        csv << csv_row(runs[i].benchmark, reports[i], opts.timing);
        fs::path json_path = fs::path(opts.out_dir) /
                             (runs[i].benchmark + "_" + reports[i].method + ".json");
        write_file(json_path, report_to_json(reports[i], opts.timing).dump(2) + "\n");
    }
    write_file(fs::path(opts.out_dir) / "results.csv", csv.str());
    return 0;
}

int cmd_solve(const std::string& problem_path, const CommonOpts& opts) {
    Problem p = load_problem(problem_path);
    std::string stem = fs::path(problem_path).stem().string();
    std::vector<NamedRun> runs;
    for (const auto& spec : specs_from(opts)) runs.push_back({stem, p, spec});
    return execute_runs(runs, opts);
}

struct BenchOpts {
    std::string family;
    int facilities = 2, demands = 1;
    int vertices = 3, colors = 3, blocks = 2;
    std::string edges;       // "1-2,2-3"; empty -> seeded random graph
    double edge_prob = 0.5;
    std::string capacities;  // "2,3"; empty -> near-equal split
    int count = 1;
};

Graph graph_from(const BenchOpts& bench, uint64_t seed) {
    if (bench.edges.empty()) return sample_graph(bench.vertices, bench.edge_prob, seed);
    Graph g;
    g.num_vertices = bench.vertices;
    for (const auto& token : split_list(bench.edges, ',')) {
        auto ends = split_list(token, '-');
        if (ends.size() != 2) throw CLI::ValidationError("--edges", "expected a-b pairs: " + token);
        g.edges.emplace_back(std::stoi(ends[0]), std::stoi(ends[1]));
    }
    return g;
}

std::vector<int> capacities_from(const BenchOpts& bench) {
    std::vector<int> caps;
    if (!bench.capacities.empty()) {
        for (const auto& token : split_list(bench.capacities, ',')) caps.push_back(std::stoi(token));
        return caps;
    }
    int base = bench.vertices / bench.blocks, extra = bench.vertices % bench.blocks;
    for (int k = 0; k < bench.blocks; ++k) caps.push_back(base + (k < extra ? 1 : 0));
    return caps;
}

int cmd_bench(const BenchOpts& bench, const CommonOpts& opts) {
    std::vector<NamedRun> runs;
    for (int i = 0; i < bench.count; ++i) {
        uint64_t instance_seed = opts.seed + static_cast<uint64_t>(i);
        Problem p;
        std::string name;
        if (bench.family == "flp") {
            auto open_costs = sample_costs(static_cast<size_t>(bench.facilities),
                                           derive_seed(instance_seed, "flp-open"));
            std::vector<std::vector<Rational>> supply;
            for (int d = 0; d < bench.demands; ++d)
                supply.push_back(sample_costs(static_cast<size_t>(bench.facilities),
                                              derive_seed(instance_seed, "flp-supply-" + std::to_string(d))));
            p = generate_flp(bench.facilities, bench.demands, open_costs, supply);
            name = "flp-" + std::to_string(bench.facilities) + "x" + std::to_string(bench.demands);
        } else if (bench.family == "gcp") {
            Graph g = graph_from(bench, derive_seed(instance_seed, "gcp-graph"));
            p = generate_gcp(g, bench.colors);
            name = "gcp-" + std::to_string(bench.vertices) + "v" + std::to_string(bench.colors) + "c";
        } else if (bench.family == "kpp") {
            Graph g = graph_from(bench, derive_seed(instance_seed, "kpp-graph"));
            auto weights = sample_costs(g.edges.size(), derive_seed(instance_seed, "kpp-weights"), 1, 10);
            p = generate_kpp(g, weights, capacities_from(bench));
            name = "kpp-" + std::to_string(bench.vertices) + "v" + std::to_string(bench.blocks) + "b";
        } else {
            throw CLI::ValidationError("--family", "must be one of flp, gcp, kpp");
        }
        name += "-s" + std::to_string(instance_seed);
        for (auto spec : specs_from(opts)) {
            spec.seed = instance_seed;
            runs.push_back({name, p, spec});
        }
    }
    return execute_runs(runs, opts);
}

int cmd_decompose(const std::string& problem_path, const std::string& qasm_path, bool dump_basis,
                  const CommonOpts& opts) {
    Problem p = load_problem(problem_path);
    ConstraintBasis basis = solve_basis(p);
    if (basis.empty())
        std::cerr << "warning: the constraint system is fully determined; the driver is empty\n";

    std::ostream& out = std::cout;
    out << "variables: " << p.num_vars << ", constraints: " << p.constraints.num_rows()
        << ", basis vectors: " << basis.size() << "\n";
    for (size_t i = 0; i < basis.vectors.size(); ++i) {
        out << "u" << i + 1 << " = [";
        for (size_t j = 0; j < basis.vectors[i].size(); ++j)
            out << (j ? "," : "") << static_cast<int>(basis.vectors[i][j]);
        out << "]\n";
    }
    if (dump_basis) {
        nlohmann::json jb = nlohmann::json::array();
        for (const auto& u : basis.vectors) jb.push_back(std::vector<int>(u.begin(), u.end()));
        out << jb.dump() << "\n";
    }

    std::vector<DriverTerm> terms = build_driver_terms(basis);
    for (size_t i = 0; i < terms.size(); ++i) {
        std::vector<Gate> g = build_g_gates(terms[i]);
        size_t cx = 0, x = 0, h = 0;
        for (const auto& gate : g) {
            if (gate.kind == GateKind::CX) ++cx;
            else if (gate.kind == GateKind::X) ++x;
            else ++h;
        }
        out << "term " << i + 1 << ": support ";
        for (size_t j = 0; j < terms[i].support.size(); ++j)
            out << (j ? "," : "") << terms[i].support[j];
        out << " | converter: " << cx << " CX + " << x << " X + " << h << " H\n";
    }

    const int layers = opts.layers > 0 ? opts.layers : 1;
    auto diag = std::make_shared<ObjectiveDiagonal>(build_objective_diagonal(p));
    Bits x_star;
    if (auto found = find_feasible(p)) x_star = found->bits;
    else throw SolverError("no feasible initial assignment found");
    Circuit c = assemble_chocoq_circuit(p, diag, terms, layers, x_star);

    DepthReport logical = depth_and_counts(c, DepthMode::Logical);
    DepthReport estimated = depth_and_counts(c, DepthMode::EstimatedBasic);
    out << "depth (logical): " << logical.depth << "\n";
    out << "depth (estimated-basic): " << estimated.depth << "\n";
    out << "gate counts:";
    for (const auto& [kind, count] : logical.counts) out << " " << kind << "=" << count;
    out << "\n";

    if (!qasm_path.empty()) {
        ParameterVector params;
        params.gammas.assign(static_cast<size_t>(layers), 0.0);
        params.betas.assign(static_cast<size_t>(layers), 0.0);
        write_file(qasm_path, export_circuit(c, params));
        out << "circuit written to " << qasm_path << "\n";
    }
    return 0;
}

int cmd_oracle(const std::string& problem_path) {
    Problem p = load_problem(problem_path);
    OracleResult oracle = brute_force_oracle(p);
    nlohmann::json j;
    j["feasible_count"] = oracle.feasible_count;
    if (oracle.feasible_count > 0) {
        j["optimal_value"] = oracle.optimal_value.to_string();
        j["optimal_solution"] = bits_to_string(oracle.optimal_set.front());
        j["optimal_count"] = oracle.optimal_set.size();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"constrained binary optimization via constraint-preserving QAOA"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string problem_path, qasm_path;
    bool dump_basis = false;
    BenchOpts bench;

    CLI::App* solve_cmd = app.add_subcommand("solve", "run solvers on a problem file");
    solve_cmd->add_option("--problem", problem_path, "problem JSON file")->required();
    add_common(solve_cmd, opts);

    CLI::App* bench_cmd = app.add_subcommand("bench", "generate a benchmark instance and run solvers");
    bench_cmd->add_option("--family", bench.family, "flp, gcp or kpp")->required();
    bench_cmd->add_option("--facilities", bench.facilities, "flp facilities");
    bench_cmd->add_option("--demands", bench.demands, "flp demands");
    bench_cmd->add_option("--vertices", bench.vertices, "graph vertices");
    bench_cmd->add_option("--colors", bench.colors, "gcp colors");
    bench_cmd->add_option("--blocks", bench.blocks, "kpp blocks");
    bench_cmd->add_option("--edges", bench.edges, "explicit edge list a-b,c-d (default: seeded random)");
    bench_cmd->add_option("--edge-prob", bench.edge_prob, "edge probability for random graphs");
    bench_cmd->add_option("--capacities", bench.capacities, "kpp capacities, comma-separated");
    bench_cmd->add_option("--count", bench.count, "instances to generate (seeds seed..seed+count-1)");
    add_common(bench_cmd, opts);

    CLI::App* decomp_cmd = app.add_subcommand("decompose", "print the driver basis and circuit accounting");
    decomp_cmd->add_option("--problem", problem_path, "problem JSON file")->required();
    decomp_cmd->add_option("--emit-qasm", qasm_path, "write the circuit text form here");
    decomp_cmd->add_flag("--dump-basis", dump_basis, "dump the basis as a JSON array");
    add_common(decomp_cmd, opts);

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "print the exact optimum as JSON");
    oracle_cmd->add_option("--problem", problem_path, "problem JSON file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(problem_path, opts);
        if (bench_cmd->parsed()) return cmd_bench(bench, opts);
        if (decomp_cmd->parsed()) return cmd_decompose(problem_path, qasm_path, dump_basis, opts);
        if (oracle_cmd->parsed()) return cmd_oracle(problem_path);
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const BasisNotFound& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}

} // namespace chocoq

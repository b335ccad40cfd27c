#include "chocoq/json_io.hpp"

#include <cmath>
#include <fstream>

namespace chocoq {

using nlohmann::json;

json problem_to_json(const Problem& p) {
    json obj;
    obj["direction"] = p.objective.direction == Direction::Maximize ? "maximize" : "minimize";
    obj["constant"] = p.objective.constant.to_string();
    json linear = json::array();
    for (const auto& [var, coeff] : p.objective.linear)
        linear.push_back(json::array({var, coeff.to_string()}));
    obj["linear"] = std::move(linear);
    json quadratic = json::array();
    for (const auto& [key, coeff] : p.objective.quadratic)
        quadratic.push_back(json::array({key.first, key.second, coeff.to_string()}));
    obj["quadratic"] = std::move(quadratic);

    json constraints = json::array();
    for (const auto& row : p.constraints.rows())
        constraints.push_back(json{{"coeffs", row.coeffs}, {"rhs", row.rhs}});

    return json{{"num_vars", p.num_vars},
                {"var_names", p.var_names},
                {"objective", std::move(obj)},
                {"constraints", std::move(constraints)}};
}

Problem problem_from_json(const json& j) {
    const int n = j.at("num_vars").get<int>();

    Objective obj;
    const json& jo = j.at("objective");
    std::string direction = jo.at("direction").get<std::string>();
    if (direction == "maximize") obj.direction = Direction::Maximize;
    else if (direction == "minimize") obj.direction = Direction::Minimize;
    else throw std::invalid_argument("direction must be minimize or maximize");
    if (jo.contains("constant")) obj.constant = Rational::from_string(jo.at("constant").get<std::string>());
    if (jo.contains("linear"))
        for (const auto& entry : jo.at("linear"))
            obj.add_linear(entry.at(0).get<int>(), Rational::from_string(entry.at(1).get<std::string>()));
    if (jo.contains("quadratic"))
        for (const auto& entry : jo.at("quadratic"))
            obj.add_quadratic(entry.at(0).get<int>(), entry.at(1).get<int>(),
                              Rational::from_string(entry.at(2).get<std::string>()));

    std::vector<ConstraintRow> rows;
    if (j.contains("constraints"))
        for (const auto& row : j.at("constraints")) {
            ConstraintRow r;
            r.coeffs = row.at("coeffs").get<std::vector<long long>>();
            r.rhs = row.at("rhs").get<long long>();
            rows.push_back(std::move(r));
        }

    std::vector<std::string> names;
    if (j.contains("var_names")) names = j.at("var_names").get<std::vector<std::string>>();

    return make_problem(n, std::move(obj), ConstraintSystem(std::move(rows), n), std::move(names));
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file: " + path);
    json j;
    in >> j;
    return problem_from_json(j);
}

void save_problem(const Problem& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write problem file: " + path);
    out << problem_to_json(p).dump(2) << "\n";
}

json report_to_json(const RunReport& report, bool include_timings) {
    json counts;
    for (const auto& [bitstring, count] : report.samples.counts) counts[bitstring] = count;

    // Angles are 2 pi periodic for the driver spectrum; report them wrapped.
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    std::vector<double> wrapped = report.opt_trace.best_theta;
    for (double& t : wrapped) {
        t = std::fmod(t, kTwoPi);
        if (t < 0) t += kTwoPi;
    }
    json trace = json::array();
    for (const auto& entry : report.opt_trace.entries)
        trace.push_back(json::array({entry.iteration, entry.value}));

    json j{{"method", report.method},
           {"layers", report.layers},
           {"shots", report.shots},
           {"seed", report.seed},
           {"num_qubits", report.num_qubits},
           {"num_subcircuits", report.num_subcircuits},
           {"success_rate", report.success_rate},
           {"in_constraints_rate", report.in_constraints_rate},
           {"samples", json{{"counts", std::move(counts)}, {"shots", report.samples.shots}}},
           {"depth_logical", report.depth_logical},
           {"depth_estimated", report.depth_estimated},
           {"gate_counts", report.gate_counts},
           {"internal_expectation", report.internal_expectation},
           {"objective_expectation", report.objective_expectation},
           {"iterations", report.opt_trace.evaluations},
           {"best_theta", std::move(wrapped)},
           {"trace", std::move(trace)}};
    j["arg"] = report.arg ? json(*report.arg) : json(nullptr);
    j["wall_ms"] = json{{"compile", include_timings ? report.wall.compile_ms : 0.0},
                        {"execute", include_timings ? report.wall.execute_ms : 0.0}};
    if (!report.opt_trace.diagnostics.empty()) j["optimizer_diagnostics"] = report.opt_trace.diagnostics;
    return j;
}

} // namespace chocoq

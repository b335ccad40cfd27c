#pragma once

#include <string>

#include <json.hpp>

#include "chocoq/problem.hpp"
#include "chocoq/solvers.hpp"

namespace chocoq {

/// Problem file schema: num_vars, var_names, objective {direction,
/// constant, linear [[var, coeff]...], quadratic [[i, j, coeff]...]},
/// constraints [{coeffs, rhs}...]. Variable indices are 1-based and
/// coefficients travel as decimal strings so nothing is lost to binary
/// floating point.
nlohmann::json problem_to_json(const Problem& p);
Problem problem_from_json(const nlohmann::json& j);

Problem load_problem(const std::string& path);
void save_problem(const Problem& p, const std::string& path);

nlohmann::json report_to_json(const RunReport& report, bool include_timings);

} // namespace chocoq

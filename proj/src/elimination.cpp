#include "chocoq/elimination.hpp"

#include <algorithm>
#include <stdexcept>

namespace chocoq {

ConstraintBasis solve_basis(const Problem& p, long long budget) {
    if (auto basis = solve_onehot_pattern(p.constraints, p.num_vars)) return *basis;
    return solve_general(p.constraints, p.num_vars, budget);
}

namespace {

ConstraintBasis solve_columns(const std::vector<ConstraintRow>& rows, int n) {
    std::vector<ConstraintRow> homogeneous = rows;
    for (auto& r : homogeneous) r.rhs = 0; // only the coefficient pattern matters here
    ConstraintSystem cs(std::move(homogeneous), n);
    if (auto basis = solve_onehot_pattern(cs, n)) return *basis;
    return solve_general(cs, n);
}

} // namespace

EliminationPlan build_elimination_plan(const Problem& p, const ConstraintBasis& basis, int k) {
    if (k < 1 || k >= p.num_vars)
        throw std::invalid_argument("elimination count must satisfy 1 <= k < num_vars");

    // Working copy of the coefficient matrix over the surviving variables.
    std::vector<ConstraintRow> rows(p.constraints.rows().begin(), p.constraints.rows().end());
    std::vector<int> original(static_cast<size_t>(p.num_vars)); // current column -> 1-based var
    for (int i = 0; i < p.num_vars; ++i) original[static_cast<size_t>(i)] = i + 1;

    ConstraintBasis current = basis;
    std::vector<int> eliminated;
    for (int pick = 0; pick < k; ++pick) {
        const int cur_n = static_cast<int>(original.size());
        std::vector<int> counts(static_cast<size_t>(cur_n), 0);
        for (const auto& u : current.vectors)
            for (int i = 0; i < cur_n; ++i)
                if (u[static_cast<size_t>(i)] != 0) ++counts[static_cast<size_t>(i)];
        int best = 0;
        for (int i = 1; i < cur_n; ++i)
            if (counts[static_cast<size_t>(i)] > counts[static_cast<size_t>(best)]) best = i;

        eliminated.push_back(original[static_cast<size_t>(best)]);
        original.erase(original.begin() + best);
        for (auto& row : rows) row.coeffs.erase(row.coeffs.begin() + best);
        current = solve_columns(rows, cur_n - 1);
    }

    // Remap surviving variables to dense 1-based indices.
    std::vector<int> new_index(static_cast<size_t>(p.num_vars + 1), 0);
    {
        int next = 1;
        std::vector<bool> gone(static_cast<size_t>(p.num_vars + 1), false);
        for (int v : eliminated) gone[static_cast<size_t>(v)] = true;
        for (int v = 1; v <= p.num_vars; ++v)
            if (!gone[static_cast<size_t>(v)]) new_index[static_cast<size_t>(v)] = next++;
    }
    auto is_eliminated = [&](int v) { return new_index[static_cast<size_t>(v)] == 0; };

    EliminationPlan plan;
    plan.eliminated_vars = eliminated;

    const size_t combos = 1ULL << k;
    for (size_t a = 0; a < combos; ++a) {
        Bits values(static_cast<size_t>(k), 0);
        for (int t = 0; t < k; ++t)
            values[static_cast<size_t>(t)] = (a >> (k - 1 - t)) & 1 ? 1 : 0;
        std::vector<uint8_t> value_of(static_cast<size_t>(p.num_vars + 1), 0);
        for (int t = 0; t < k; ++t)
            value_of[static_cast<size_t>(eliminated[static_cast<size_t>(t)])] = values[static_cast<size_t>(t)];

        Objective obj;
        obj.direction = p.objective.direction;
        obj.constant = p.objective.constant;
        for (const auto& [var, coeff] : p.objective.linear) {
            if (is_eliminated(var)) {
                if (value_of[static_cast<size_t>(var)]) obj.constant += coeff;
            } else {
                obj.add_linear(new_index[static_cast<size_t>(var)], coeff);
            }
        }
        for (const auto& [key, coeff] : p.objective.quadratic) {
            auto [i, j] = key;
            bool ei = is_eliminated(i), ej = is_eliminated(j);
            if (ei && ej) {
                if (value_of[static_cast<size_t>(i)] && value_of[static_cast<size_t>(j)]) obj.constant += coeff;
            } else if (ei) {
                if (value_of[static_cast<size_t>(i)]) obj.add_linear(new_index[static_cast<size_t>(j)], coeff);
            } else if (ej) {
                if (value_of[static_cast<size_t>(j)]) obj.add_linear(new_index[static_cast<size_t>(i)], coeff);
            } else {
                obj.add_quadratic(new_index[static_cast<size_t>(i)], new_index[static_cast<size_t>(j)], coeff);
            }
        }

        bool infeasible = false;
        std::vector<ConstraintRow> sub_rows;
        for (const auto& row : p.constraints.rows()) {
            ConstraintRow r;
            r.rhs = row.rhs;
            for (int v = 1; v <= p.num_vars; ++v) {
                long long c = row.coeffs[static_cast<size_t>(v - 1)];
                if (is_eliminated(v)) {
                    if (value_of[static_cast<size_t>(v)]) r.rhs -= c;
                } else {
                    r.coeffs.push_back(c);
                }
            }
            bool all_zero = std::all_of(r.coeffs.begin(), r.coeffs.end(),
                                        [](long long c) { return c == 0; });
            if (all_zero) {
                if (r.rhs != 0) infeasible = true;
                continue;
            }
            sub_rows.push_back(std::move(r));
        }

        std::vector<std::string> names;
        for (int v = 1; v <= p.num_vars; ++v)
            if (!is_eliminated(v)) names.push_back(p.var_names[static_cast<size_t>(v - 1)]);

        const int sub_n = p.num_vars - k;
        SubInstance sub;
        sub.eliminated_values = std::move(values);
        sub.reduced = make_problem(sub_n, std::move(obj), ConstraintSystem(std::move(sub_rows), sub_n),
                                   std::move(names));
        sub.trivially_infeasible = infeasible;
        plan.sub_instances.push_back(std::move(sub));
    }
    return plan;
}

} // namespace chocoq

#include "chocoq/problem.hpp"

#include <algorithm>
#include <stdexcept>

#include "chocoq/prng.hpp"

namespace chocoq {

void Objective::add_linear(int var, const Rational& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = linear.emplace(var, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) linear.erase(it);
    }
}

void Objective::add_quadratic(int i, int j, const Rational& coeff) {
    if (coeff.is_zero()) return;
    if (i > j) std::swap(i, j);
    auto [it, inserted] = quadratic.emplace(std::make_pair(i, j), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) quadratic.erase(it);
    }
}

ConstraintSystem::ConstraintSystem(std::vector<ConstraintRow> rows, int num_vars)
    : num_vars_(num_vars) {
    for (auto& row : rows) {
        if (static_cast<int>(row.coeffs.size()) != num_vars)
            throw std::invalid_argument("constraint row length does not match variable count");
        bool all_zero = std::all_of(row.coeffs.begin(), row.coeffs.end(),
                                    [](long long c) { return c == 0; });
        if (all_zero) {
            if (row.rhs != 0)
                throw std::invalid_argument("constraint 0 = c with c != 0 is trivially infeasible");
            continue; // degenerate row, drop
        }
        rows_.push_back(std::move(row));
    }
}

Problem make_problem(int num_vars, Objective objective, ConstraintSystem constraints,
                     std::vector<std::string> var_names) {
    if (num_vars <= 0) throw std::invalid_argument("problem needs a positive variable count");
    for (const auto& [var, coeff] : objective.linear) {
        (void)coeff;
        if (var < 1 || var > num_vars) throw std::invalid_argument("objective references variable out of range");
    }
    for (const auto& [key, coeff] : objective.quadratic) {
        (void)coeff;
        if (key.first < 1 || key.second > num_vars || key.first > key.second)
            throw std::invalid_argument("objective quadratic key out of range");
    }
    if (constraints.num_vars() != 0 && constraints.num_vars() != num_vars)
        throw std::invalid_argument("constraint system variable count mismatch");
    if (var_names.empty()) {
        var_names.reserve(static_cast<size_t>(num_vars));
        for (int i = 1; i <= num_vars; ++i) var_names.push_back("x" + std::to_string(i));
    }
    if (static_cast<int>(var_names.size()) != num_vars)
        throw std::invalid_argument("variable name list length mismatch");
    Problem p;
    p.num_vars = num_vars;
    p.objective = std::move(objective);
    p.constraints = std::move(constraints);
    p.var_names = std::move(var_names);
    return p;
}

Rational evaluate_objective(const Problem& p, const Bits& x) {
    if (static_cast<int>(x.size()) != p.num_vars)
        throw std::invalid_argument("assignment length does not match variable count");
    Rational total = p.objective.constant;
    for (const auto& [var, coeff] : p.objective.linear)
        if (x[static_cast<size_t>(var - 1)]) total += coeff;
    for (const auto& [key, coeff] : p.objective.quadratic)
        if (x[static_cast<size_t>(key.first - 1)] && x[static_cast<size_t>(key.second - 1)])
            total += coeff;
    return total;
}

bool check_feasible(const Problem& p, const Bits& x) {
    if (static_cast<int>(x.size()) != p.num_vars)
        throw std::invalid_argument("assignment length does not match variable count");
    for (const auto& row : p.constraints.rows()) {
        long long sum = 0;
        for (int i = 0; i < p.num_vars; ++i)
            if (x[static_cast<size_t>(i)]) sum += row.coeffs[static_cast<size_t>(i)];
        if (sum != row.rhs) return false;
    }
    return true;
}

namespace {

// Shared DFS over binary assignments with per-row attainable-range pruning.
// Calls `leaf` on every feasible assignment; stops early when `leaf` returns
// false. Returns false iff the node budget ran out.
class FeasibilityWalker {
public:
    FeasibilityWalker(const Problem& p, long long budget)
        : p_(p), budget_(budget), x_(static_cast<size_t>(p.num_vars), 0) {
        const auto& rows = p_.constraints.rows();
        sum_.assign(rows.size(), 0);
        min_rem_.assign(rows.size(), 0);
        max_rem_.assign(rows.size(), 0);
        constrained_.assign(static_cast<size_t>(p.num_vars), false);
        for (size_t r = 0; r < rows.size(); ++r) {
            for (int i = 0; i < p_.num_vars; ++i) {
                long long c = rows[r].coeffs[static_cast<size_t>(i)];
                if (c > 0) max_rem_[r] += c;
                if (c < 0) min_rem_[r] += c;
                if (c != 0) constrained_[static_cast<size_t>(i)] = true;
            }
        }
    }

    template <typename Leaf>
    bool run(const Leaf& leaf) {
        done_ = false;
        return descend(0, leaf);
    }

private:
    template <typename Leaf>
    bool descend(int var, const Leaf& leaf) {
        if (var == p_.num_vars) {
            if (!leaf(x_)) done_ = true;
            return true;
        }
        // Constrained variables try 1 first: equality rows with positive rhs
        // need mass early, which shortens the search on one-hot systems.
        const uint8_t order[2][2] = {{0, 1}, {1, 0}};
        const uint8_t* vals = order[constrained_[static_cast<size_t>(var)] ? 1 : 0];
        for (int k = 0; k < 2; ++k) {
            if (--budget_ < 0) return false;
            uint8_t v = vals[k];
            if (!assign(var, v)) {
                unassign(var, v);
                continue;
            }
            x_[static_cast<size_t>(var)] = v;
            bool ok = descend(var + 1, leaf);
            unassign(var, v);
            if (!ok) return false;
            if (done_) return true;
        }
        return true;
    }

    bool assign(int var, uint8_t value) {
        const auto& rows = p_.constraints.rows();
        bool viable = true;
        for (size_t r = 0; r < rows.size(); ++r) {
            long long c = rows[r].coeffs[static_cast<size_t>(var)];
            if (c == 0) continue;
            if (value) sum_[r] += c;
            if (c > 0) max_rem_[r] -= c; else min_rem_[r] -= c;
            if (rows[r].rhs < sum_[r] + min_rem_[r] || rows[r].rhs > sum_[r] + max_rem_[r])
                viable = false;
        }
        return viable;
    }

    void unassign(int var, uint8_t value) {
        const auto& rows = p_.constraints.rows();
        for (size_t r = 0; r < rows.size(); ++r) {
            long long c = rows[r].coeffs[static_cast<size_t>(var)];
            if (c == 0) continue;
            if (value) sum_[r] -= c;
            if (c > 0) max_rem_[r] += c; else min_rem_[r] += c;
        }
    }

    const Problem& p_;
    long long budget_;
    Bits x_;
    std::vector<long long> sum_, min_rem_, max_rem_;
    std::vector<bool> constrained_;
    bool done_ = false;
};

} // namespace

std::optional<FeasibleAssignment> find_feasible(const Problem& p, long long budget) {
    if (budget <= 0) throw std::invalid_argument("search budget must be positive");
    std::optional<FeasibleAssignment> found;
    FeasibilityWalker walker(p, budget);
    walker.run([&](const Bits& x) {
        found = FeasibleAssignment{x};
        return false; // stop at first
    });
    return found;
}

bool enumerate_feasible(const Problem& p, long long budget,
                        const std::function<bool(const Bits&)>& leaf) {
    FeasibilityWalker walker(p, budget);
    return walker.run(leaf);
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

Problem generate_flp(int num_facilities, int num_demands,
                     const std::vector<Rational>& open_costs,
                     const std::vector<std::vector<Rational>>& supply_costs) {
    if (num_facilities < 1 || num_demands < 0)
        throw std::invalid_argument("flp needs >= 1 facility and >= 0 demands");
    if (static_cast<int>(open_costs.size()) != num_facilities)
        throw std::invalid_argument("open cost count does not match facilities");
    if (static_cast<int>(supply_costs.size()) != num_demands)
        throw std::invalid_argument("supply cost rows do not match demands");
    for (const auto& row : supply_costs)
        if (static_cast<int>(row.size()) != num_facilities)
            throw std::invalid_argument("supply cost columns do not match facilities");

    const int F = num_facilities, D = num_demands;
    const int n = F + 2 * F * D;
    auto o_var = [&](int f) { return f; };                            // 1..F
    auto s_var = [&](int d, int f) { return F + (d - 1) * F + f; };   // demand-major
    auto a_var = [&](int d, int f) { return F + F * D + (d - 1) * F + f; };

    std::vector<std::string> names(static_cast<size_t>(n));
    for (int f = 1; f <= F; ++f) names[static_cast<size_t>(o_var(f) - 1)] = "o_" + std::to_string(f);
    for (int d = 1; d <= D; ++d)
        for (int f = 1; f <= F; ++f) {
            names[static_cast<size_t>(s_var(d, f) - 1)] = "s_" + std::to_string(d) + "_" + std::to_string(f);
            names[static_cast<size_t>(a_var(d, f) - 1)] = "a_" + std::to_string(d) + "_" + std::to_string(f);
        }

    Objective obj;
    obj.direction = Direction::Minimize;
    for (int f = 1; f <= F; ++f) obj.add_linear(o_var(f), open_costs[static_cast<size_t>(f - 1)]);
    for (int d = 1; d <= D; ++d)
        for (int f = 1; f <= F; ++f)
            obj.add_linear(s_var(d, f), supply_costs[static_cast<size_t>(d - 1)][static_cast<size_t>(f - 1)]);

    std::vector<ConstraintRow> rows;
    for (int d = 1; d <= D; ++d) {
        ConstraintRow row;
        row.coeffs.assign(static_cast<size_t>(n), 0);
        for (int f = 1; f <= F; ++f) row.coeffs[static_cast<size_t>(s_var(d, f) - 1)] = 1;
        row.rhs = 1;
        rows.push_back(std::move(row));
    }
    for (int d = 1; d <= D; ++d)
        for (int f = 1; f <= F; ++f) {
            ConstraintRow row;
            row.coeffs.assign(static_cast<size_t>(n), 0);
            row.coeffs[static_cast<size_t>(s_var(d, f) - 1)] = 1;
            row.coeffs[static_cast<size_t>(a_var(d, f) - 1)] = 1;
            row.coeffs[static_cast<size_t>(o_var(f) - 1)] = -1;
            row.rhs = 0;
            rows.push_back(std::move(row));
        }

    return make_problem(n, std::move(obj), ConstraintSystem(std::move(rows), n), std::move(names));
}

namespace {

void validate_simple_graph(const Graph& g) {
    for (auto [a, b] : g.edges) {
        if (a == b) throw std::invalid_argument("graph has a self-loop");
        if (a < 1 || b < 1 || a > g.num_vertices || b > g.num_vertices)
            throw std::invalid_argument("edge endpoint out of range");
    }
}

} // namespace

Problem generate_gcp(const Graph& graph, int num_colors) {
    if (num_colors < 1) throw std::invalid_argument("gcp needs at least one color");
    validate_simple_graph(graph);

    const int V = graph.num_vertices, C = num_colors;
    const int E = static_cast<int>(graph.edges.size());
    const int n = V * C + E * C;
    auto x_var = [&](int i, int k) { return (i - 1) * C + k; };
    auto a_var = [&](int e, int k) { return V * C + (e - 1) * C + k; };

    std::vector<std::string> names(static_cast<size_t>(n));
    for (int i = 1; i <= V; ++i)
        for (int k = 1; k <= C; ++k)
            names[static_cast<size_t>(x_var(i, k) - 1)] = "x_" + std::to_string(i) + "_" + std::to_string(k);
    for (int e = 1; e <= E; ++e)
        for (int k = 1; k <= C; ++k)
            names[static_cast<size_t>(a_var(e, k) - 1)] = "a_" + std::to_string(e) + "_" + std::to_string(k);

    Objective obj;
    obj.direction = Direction::Minimize;
    for (int i = 1; i <= V; ++i)
        for (int k = 1; k <= C; ++k) obj.add_linear(x_var(i, k), Rational(k));

    std::vector<ConstraintRow> rows;
    for (int i = 1; i <= V; ++i) {
        ConstraintRow row;
        row.coeffs.assign(static_cast<size_t>(n), 0);
        for (int k = 1; k <= C; ++k) row.coeffs[static_cast<size_t>(x_var(i, k) - 1)] = 1;
        row.rhs = 1;
        rows.push_back(std::move(row));
    }
    for (int e = 1; e <= E; ++e) {
        auto [i, j] = graph.edges[static_cast<size_t>(e - 1)];
        for (int k = 1; k <= C; ++k) {
            ConstraintRow row;
            row.coeffs.assign(static_cast<size_t>(n), 0);
            row.coeffs[static_cast<size_t>(x_var(i, k) - 1)] = 1;
            row.coeffs[static_cast<size_t>(x_var(j, k) - 1)] = 1;
            row.coeffs[static_cast<size_t>(a_var(e, k) - 1)] = 1;
            row.rhs = 1;
            rows.push_back(std::move(row));
        }
    }

    return make_problem(n, std::move(obj), ConstraintSystem(std::move(rows), n), std::move(names));
}

Problem generate_kpp(const Graph& graph, const std::vector<Rational>& edge_weights,
                     const std::vector<int>& capacities) {
    validate_simple_graph(graph);
    if (edge_weights.size() != graph.edges.size())
        throw std::invalid_argument("edge weight count does not match edges");
    const int V = graph.num_vertices;
    const int K = static_cast<int>(capacities.size());
    if (K < 1) throw std::invalid_argument("kpp needs at least one block");
    long long cap_sum = 0;
    for (int m : capacities) cap_sum += m;
    if (cap_sum != V) throw std::invalid_argument("block capacities must sum to the vertex count");

    const int n = V * K;
    auto x_var = [&](int i, int k) { return (i - 1) * K + k; };

    std::vector<std::string> names(static_cast<size_t>(n));
    for (int i = 1; i <= V; ++i)
        for (int k = 1; k <= K; ++k)
            names[static_cast<size_t>(x_var(i, k) - 1)] = "x_" + std::to_string(i) + "_" + std::to_string(k);

    // maximize sum_e w_e (1 - sum_k x_{i,k} x_{j,k})
    Objective obj;
    obj.direction = Direction::Maximize;
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        auto [i, j] = graph.edges[e];
        obj.constant += edge_weights[e];
        for (int k = 1; k <= K; ++k) obj.add_quadratic(x_var(i, k), x_var(j, k), -edge_weights[e]);
    }

    std::vector<ConstraintRow> rows;
    for (int i = 1; i <= V; ++i) {
        ConstraintRow row;
        row.coeffs.assign(static_cast<size_t>(n), 0);
        for (int k = 1; k <= K; ++k) row.coeffs[static_cast<size_t>(x_var(i, k) - 1)] = 1;
        row.rhs = 1;
        rows.push_back(std::move(row));
    }
    for (int k = 1; k <= K; ++k) {
        ConstraintRow row;
        row.coeffs.assign(static_cast<size_t>(n), 0);
        for (int i = 1; i <= V; ++i) row.coeffs[static_cast<size_t>(x_var(i, k) - 1)] = 1;
        row.rhs = capacities[static_cast<size_t>(k - 1)];
        rows.push_back(std::move(row));
    }

    return make_problem(n, std::move(obj), ConstraintSystem(std::move(rows), n), std::move(names));
}

std::vector<Rational> sample_costs(size_t count, uint64_t seed, int lo_tenths, int hi_tenths) {
    SplitMix64 rng(seed);
    std::vector<Rational> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        long long tenths = lo_tenths + static_cast<long long>(rng.next_below(
                                           static_cast<uint64_t>(hi_tenths - lo_tenths + 1)));
        out.emplace_back(tenths, 10);
    }
    return out;
}

Graph sample_graph(int num_vertices, double edge_prob, uint64_t seed) {
    SplitMix64 rng(seed);
    Graph g;
    g.num_vertices = num_vertices;
    for (int i = 1; i <= num_vertices; ++i)
        for (int j = i + 1; j <= num_vertices; ++j)
            if (rng.next_double() < edge_prob) g.edges.emplace_back(i, j);
    return g;
}

Bits recombine(const EliminationPlan& plan, size_t sub_index, const Bits& reduced_bits) {
    const SubInstance& sub = plan.sub_instances.at(sub_index);
    const size_t k = plan.eliminated_vars.size();
    const size_t n = reduced_bits.size() + k;
    std::vector<bool> eliminated(n, false);
    for (int var : plan.eliminated_vars) eliminated[static_cast<size_t>(var - 1)] = true;
    Bits full(n, 0);
    size_t src = 0;
    for (size_t i = 0; i < n; ++i)
        if (!eliminated[i]) full[i] = reduced_bits[src++];
    for (size_t t = 0; t < k; ++t)
        full[static_cast<size_t>(plan.eliminated_vars[t] - 1)] = sub.eliminated_values[t];
    return full;
}

} // namespace chocoq

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chocoq/rational.hpp"

namespace chocoq {

/// Assignment of binary variables; index 0 holds x1.
using Bits = std::vector<uint8_t>;

enum class Direction { Minimize, Maximize };

/// Quadratic-plus-linear objective over binary variables.
///
/// Variable indices are 1-based. Quadratic keys are canonicalized to i <= j
/// and duplicates merged on insertion.
struct Objective {
    Direction direction = Direction::Minimize;
    Rational constant;
    std::map<int, Rational> linear;
    std::map<std::pair<int, int>, Rational> quadratic;

    void add_linear(int var, const Rational& coeff);
    void add_quadratic(int i, int j, const Rational& coeff);
};

struct ConstraintRow {
    std::vector<long long> coeffs; // length num_vars
    long long rhs = 0;
};

/// Linear equality system C x = c with integer entries.
///
/// All-zero rows with zero rhs are dropped at construction; an all-zero row
/// with nonzero rhs is rejected as trivially infeasible.
class ConstraintSystem {
public:
    ConstraintSystem() = default;
    ConstraintSystem(std::vector<ConstraintRow> rows, int num_vars);

    const std::vector<ConstraintRow>& rows() const { return rows_; }
    size_t num_rows() const { return rows_.size(); }
    int num_vars() const { return num_vars_; }

private:
    std::vector<ConstraintRow> rows_;
    int num_vars_ = 0;
};

struct Problem {
    int num_vars = 0;
    Objective objective;
    ConstraintSystem constraints;
    std::vector<std::string> var_names;
};

/// Builds a Problem, validating index ranges and filling default names.
Problem make_problem(int num_vars, Objective objective, ConstraintSystem constraints,
                     std::vector<std::string> var_names = {});

struct FeasibleAssignment {
    Bits bits;
};

/// Evaluates the objective at x in the problem's native direction.
Rational evaluate_objective(const Problem& p, const Bits& x);

/// True iff C x = c holds row-wise in exact integer arithmetic.
bool check_feasible(const Problem& p, const Bits& x);

/// Depth-first search for one solution of C x = c with per-row attainable
/// range pruning. Variables are assigned in ascending index order; variables
/// appearing in some constraint try 1 before 0, free variables try 0 first.
/// Deterministic. Returns nullopt if the budget is exhausted or the system
/// is infeasible.
std::optional<FeasibleAssignment> find_feasible(const Problem& p,
                                                long long budget = 10'000'000);

/// Walks every feasible assignment in the same deterministic DFS order as
/// find_feasible, invoking `leaf` on each; stops early when `leaf` returns
/// false. Returns false iff the node budget ran out before the search space
/// was exhausted.
bool enumerate_feasible(const Problem& p, long long budget,
                        const std::function<bool(const Bits&)>& leaf);

// ---------------------------------------------------------------------------
// Benchmark instance generators
// ---------------------------------------------------------------------------

/// Simple undirected graph with 1-based vertices.
struct Graph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Uncapacitated facility location.
///
/// Variables in order: o_f (facility open), s_{d,f} (demand d served by f,
/// d-major), a_{d,f} (slack for s <= o). Constraints: sum_f s_{d,f} = 1 per
/// demand and s_{d,f} + a_{d,f} - o_f = 0 per (d,f). Objective minimizes
/// open costs plus supply costs.
Problem generate_flp(int num_facilities, int num_demands,
                     const std::vector<Rational>& open_costs,
                     const std::vector<std::vector<Rational>>& supply_costs);

/// Graph coloring with ancillas a_{(i,j),k} making the adjacency
/// inequalities equalities. Variables in order: x_{i,k} (vertex-major), then
/// a_{(edge),k} (edge-major). Objective minimizes sum_{i,k} k * x_{i,k}, so
/// solutions prefer low color indices.
Problem generate_gcp(const Graph& graph, int num_colors);

/// K-partition with per-block capacities. Variables x_{i,k}, vertex-major.
/// Objective maximizes the total weight of cut edges.
Problem generate_kpp(const Graph& graph, const std::vector<Rational>& edge_weights,
                     const std::vector<int>& capacities);

/// Seeded cost/weight sampling helpers for benchmark suites. Values are
/// multiples of 1/10 so reports stay exact.
std::vector<Rational> sample_costs(size_t count, uint64_t seed, int lo_tenths = 1, int hi_tenths = 30);
Graph sample_graph(int num_vertices, double edge_prob, uint64_t seed);

// ---------------------------------------------------------------------------
// Variable elimination
// ---------------------------------------------------------------------------

/// One reduced problem per assignment of the eliminated variables.
/// `trivially_infeasible` marks assignments whose substituted system
/// contains an unsatisfiable 0 = c row (such rows are removed so the reduced
/// Problem stays constructible).
struct SubInstance {
    Bits eliminated_values; // aligned with EliminationPlan::eliminated_vars
    Problem reduced;
    bool trivially_infeasible = false;
};

struct EliminationPlan {
    std::vector<int> eliminated_vars; // 1-based, in pick order
    std::vector<SubInstance> sub_instances; // 2^k entries, assignment-major
};

/// Reassembles a full assignment from a sub-instance solution.
Bits recombine(const EliminationPlan& plan, size_t sub_index, const Bits& reduced_bits);

} // namespace chocoq

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chocoq/problem.hpp"

namespace chocoq {

/// Basis of the solution set of C u = 0 with entries restricted to
/// {-1, 0, +1}. Vectors are linearly independent over the rationals and the
/// count equals n - rank(C). The first nonzero entry of every vector is
/// normalized to +1; u and -u generate the same driver term, so the choice
/// is observationally irrelevant.
struct ConstraintBasis {
    int num_vars = 0;
    std::vector<std::vector<int8_t>> vectors;

    size_t size() const { return vectors.size(); }
    bool empty() const { return vectors.empty(); }
};

struct BasisNotFound : std::runtime_error {
    BasisNotFound(int achieved, int needed)
        : std::runtime_error("ternary null-space basis incomplete: found " +
                             std::to_string(achieved) + " of " + std::to_string(needed) +
                             " independent vectors within budget"),
          rank_achieved(achieved), rank_needed(needed) {}
    int rank_achieved;
    int rank_needed;
};

/// Rank of the coefficient matrix over the rationals.
int system_rank(const ConstraintSystem& cs, int n);

/// General solver. Computes the reduced row echelon form of C; if the
/// standard free-variable basis already lies in {-1,0,1}^n it is returned
/// directly. Otherwise candidate assignments of the free variables over
/// {-1,0,1} are searched in order of increasing support (pivot values forced
/// by the RREF, rejected when they leave {-1,0,1}) until n - rank(C)
/// independent vectors are collected. Deterministic. Throws BasisNotFound
/// when the budget runs out first.
ConstraintBasis solve_general(const ConstraintSystem& cs, int n, long long budget = 1'000'000);

/// Analytical solver for one-hot style systems: every row must be either a
/// subset-sum with unit coefficients of one sign (sum over S of u_j = 0) or
/// a substitution pair (u_a - u_b = 0). Substitution rows are chased into
/// equality classes; deduplicated class-level sum rows must be pairwise
/// disjoint. Emits adjacent-difference vectors per sum row plus one
/// all-ones vector per unconstrained class, in O(n) work. Returns nullopt
/// when any row falls outside the pattern (caller falls back to
/// solve_general).
std::optional<ConstraintBasis> solve_onehot_pattern(const ConstraintSystem& cs, int n);

/// Checks every basis contract (exact C u = 0, ternary entries, rational
/// independence, count == n - rank). Both solvers run this before
/// returning; exposed for tests. Throws std::logic_error on violation.
void validate_basis(const ConstraintSystem& cs, int n, const ConstraintBasis& basis);

} // namespace chocoq

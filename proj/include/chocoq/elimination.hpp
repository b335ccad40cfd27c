#pragma once

#include "chocoq/nullspace.hpp"
#include "chocoq/problem.hpp"

namespace chocoq {

/// Picks k variables greedily, each maximizing the number of nonzero
/// entries it contributes across the current null-space basis (ties go to
/// the lowest variable index), recomputing the basis of the reduced system
/// after every pick. Emits 2^k sub-instances, one per assignment of the
/// eliminated variables (first eliminated variable is the high bit of the
/// assignment index); each substitutes the assignment into objective and
/// right-hand sides.
EliminationPlan build_elimination_plan(const Problem& p, const ConstraintBasis& basis, int k);

/// Null-space basis of a problem's constraint system: the analytical
/// pattern solver when it applies, otherwise the general solver.
ConstraintBasis solve_basis(const Problem& p, long long budget = 1'000'000);

} // namespace chocoq

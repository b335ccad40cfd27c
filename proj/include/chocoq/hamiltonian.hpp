#pragma once

#include <cstdint>
#include <vector>

#include "chocoq/nullspace.hpp"
#include "chocoq/problem.hpp"

namespace chocoq {

enum class ExecPolicy { Serial, Parallel };

/// Diagonal of the objective Hamiltonian: entry at index idx is the
/// objective value of the decoded bitstring, in the internal minimize
/// orientation (maximize objectives enter negated and are un-negated in
/// reports).
struct ObjectiveDiagonal {
    int num_qubits = 0;
    std::vector<double> values; // length 2^n
};

/// One driver term per null-space vector u: the rank-2 flip operator
/// |v><vbar| + |vbar><v| on the support of u, identity elsewhere, with
/// v_i = (1+u_i)/2. Consumers derive all behavior from (support, v); the
/// 2^n tensor form is never materialized outside the dense test oracles.
struct DriverTerm {
    std::vector<int8_t> u;       // full-length ternary vector
    std::vector<int> support;    // 1-based qubits with u != 0, ascending
    std::vector<uint8_t> v;      // bit pattern on support, v_i = (1+u_i)/2
};

DriverTerm make_driver_term(const std::vector<int8_t>& u);

/// One term per basis vector, in basis order.
std::vector<DriverTerm> build_driver_terms(const ConstraintBasis& basis);

/// Diagonal entry of a constraint-row operator (sum_i c_i sigma^z_i) at a
/// basis state: sum_i c_i (1 - 2 x_i).
double row_operator_entry(const ConstraintRow& row, size_t idx, int n);

ObjectiveDiagonal build_objective_diagonal(const Problem& p,
                                           ExecPolicy policy = ExecPolicy::Parallel);

/// Penalty-encoded objective: f(x) + lambda * sum_k (C_k x - c_k)^2 in
/// minimize orientation. Restricted to the feasible set this equals the
/// plain objective diagonal exactly.
ObjectiveDiagonal build_penalty_objective(const Problem& p, double lambda_pen,
                                          ExecPolicy policy = ExecPolicy::Parallel);

/// XY chain of one constraint row: consecutive pairs over the involved
/// variables in index order; for x1+x2+x4 the pairs are (1,2) and (2,4).
struct CyclicChain {
    std::vector<int> involved;              // 1-based, ascending
    std::vector<std::pair<int, int>> pairs; // consecutive involved pairs
};

/// One chain per constraint row, in row order. Rows whose coefficients are
/// not single-sign unit sums fall outside the mixer's guarantee; the chain
/// is still built and the in-constraints metric exposes the mismatch.
std::vector<CyclicChain> build_cyclic_driver(const Problem& p);

/// Dense max-entry magnitude of the commutator [row operator, H_c(u)],
/// built from the tensor-product form of the driver term. Verification
/// oracle; capped at n <= 12.
double commutator_norm(const DriverTerm& term, const ConstraintRow& row, int n);

} // namespace chocoq

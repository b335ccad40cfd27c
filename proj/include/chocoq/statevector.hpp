#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "chocoq/circuit.hpp"
#include "chocoq/hamiltonian.hpp"
#include "chocoq/problem.hpp"

namespace chocoq {

/// Dense 2^n-amplitude state. Owned by one simulation at a time; distinct
/// simulations run fully in parallel.
struct Statevector {
    int num_qubits = 0;
    std::vector<std::complex<double>> amps;

    size_t dim() const { return amps.size(); }
};

/// Measurement counts keyed by bitstring (x1..xn order).
struct SampleSet {
    std::map<std::string, long long> counts;
    long long shots = 0;
};

int simulator_qubit_cap(); // default 26, overridable via CHOCO_MAX_QUBITS

Statevector prepare_basis_state(int n, const Bits& bits);

/// Standard unitary action of one gate, in place. Parameter slots resolve
/// against `params`; a null `params` only allows bound angles.
void apply_gate(Statevector& sv, const Gate& g, const ParameterVector* params = nullptr,
                ExecPolicy policy = ExecPolicy::Parallel);

/// Analytic action of e^{-i beta H_c(u)}: a 2x2 rotation
/// [[cos b, -i sin b], [-i sin b, cos b]] on every amplitude pair carrying
/// the patterns v / vbar on the support, everything else untouched.
void apply_driver_fastpath(Statevector& sv, const DriverTerm& term, double beta,
                           ExecPolicy policy = ExecPolicy::Parallel);

double expectation_diagonal(const Statevector& sv, const ObjectiveDiagonal& diag,
                            ExecPolicy policy = ExecPolicy::Parallel);

/// Expectation of a constraint-row operator sum_i c_i sigma^z_i.
double expectation_row_operator(const Statevector& sv, const ConstraintRow& row,
                                ExecPolicy policy = ExecPolicy::Parallel);

double norm_sq(const Statevector& sv, ExecPolicy policy = ExecPolicy::Parallel);

/// Multinomial draw from |amp|^2 with the named 64-bit counter generator;
/// identical (seed, shots, state) triples give identical samples on every
/// platform.
SampleSet sample(const Statevector& sv, long long shots, uint64_t seed);

/// Runs the circuit. With use_fastpath, gate ranges tagged as driver blocks
/// execute through apply_driver_fastpath instead of their gate expansion.
Statevector simulate(const Circuit& c, const ParameterVector& params, Statevector init,
                     bool use_fastpath = true, ExecPolicy policy = ExecPolicy::Parallel);

} // namespace chocoq

#include "chocoq/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "chocoq/bits.hpp"
#include "chocoq/kernels.hpp"
#include "chocoq/prng.hpp"

namespace chocoq {

namespace {

using cplx = std::complex<double>;
constexpr double kInvSqrt2 = 0.70710678118654752440;

uint64_t support_mask(const DriverTerm& term, int n) {
    uint64_t mask = 0;
    for (int q : term.support) mask |= 1ULL << qubit_bit(q, n);
    return mask;
}

uint64_t pattern_bits(const DriverTerm& term, int n, bool complement) {
    uint64_t bits = 0;
    for (size_t i = 0; i < term.support.size(); ++i) {
        bool one = term.v[i] != 0;
        if (complement) one = !one;
        if (one) bits |= 1ULL << qubit_bit(term.support[i], n);
    }
    return bits;
}

} // namespace

int simulator_qubit_cap() {
    if (const char* env = std::getenv("CHOCO_MAX_QUBITS")) {
        int cap = std::atoi(env);
        if (cap > 0) return cap;
    }
    return 26;
}

Statevector prepare_basis_state(int n, const Bits& bits) {
    if (static_cast<int>(bits.size()) != n)
        throw std::invalid_argument("bit count does not match qubit count");
    if (n > simulator_qubit_cap())
        throw std::invalid_argument("statevector capped at " + std::to_string(simulator_qubit_cap()) +
                                    " qubits (CHOCO_MAX_QUBITS overrides)");
    Statevector sv;
    sv.num_qubits = n;
    sv.amps.assign(1ULL << n, cplx{});
    sv.amps[bits_to_index(bits)] = 1.0;
    return sv;
}

void apply_gate(Statevector& sv, const Gate& g, const ParameterVector* params, ExecPolicy policy) {
    const bool par = policy == ExecPolicy::Parallel;
    const size_t dim = sv.dim();
    cplx* amps = sv.amps.data();
    const int n = sv.num_qubits;
    for (int q : g.qubits)
        if (q < 1 || q > n) throw std::invalid_argument("gate operand out of range");

    switch (g.kind) {
        case GateKind::H: {
            const cplx m[4] = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
            int bit = qubit_bit(g.qubits[0], n);
            par ? kernels::omp::single_qubit(amps, dim, bit, m)
                : kernels::serial::single_qubit(amps, dim, bit, m);
            break;
        }
        case GateKind::X: {
            int bit = qubit_bit(g.qubits[0], n);
            par ? kernels::omp::pauli_x(amps, dim, bit) : kernels::serial::pauli_x(amps, dim, bit);
            break;
        }
        case GateKind::CX: {
            int cb = qubit_bit(g.qubits[0], n), tb = qubit_bit(g.qubits[1], n);
            par ? kernels::omp::cx(amps, dim, cb, tb) : kernels::serial::cx(amps, dim, cb, tb);
            break;
        }
        case GateKind::RZ: {
            double a = resolve_angle(g.angle, params);
            const cplx m[4] = {std::polar(1.0, -a / 2), 0.0, 0.0, std::polar(1.0, a / 2)};
            int bit = qubit_bit(g.qubits[0], n);
            par ? kernels::omp::single_qubit(amps, dim, bit, m)
                : kernels::serial::single_qubit(amps, dim, bit, m);
            break;
        }
        case GateKind::MCP: {
            double a = resolve_angle(g.angle, params);
            uint64_t mask = 0;
            for (int q : g.qubits) mask |= 1ULL << qubit_bit(q, n);
            par ? kernels::omp::mcp(amps, dim, mask, a) : kernels::serial::mcp(amps, dim, mask, a);
            break;
        }
        case GateKind::ObjPhase: {
            if (!g.diagonal || g.diagonal->values.size() != dim)
                throw std::invalid_argument("objective phase gate without a matching diagonal");
            double a = resolve_angle(g.angle, params);
            par ? kernels::omp::phase_diagonal(amps, dim, g.diagonal->values.data(), a)
                : kernels::serial::phase_diagonal(amps, dim, g.diagonal->values.data(), a);
            break;
        }
        case GateKind::ExpXY: {
            if (!g.generator) throw std::invalid_argument("XY-chain gate without a generator");
            double a = resolve_angle(g.angle, params);
            dense::CMatrix u = dense::expm_minus_i(*g.generator, a);
            std::vector<int> bits;
            bits.reserve(g.qubits.size());
            for (int q : g.qubits) bits.push_back(qubit_bit(q, n));
            par ? kernels::omp::k_qubit_unitary(amps, dim, bits, u)
                : kernels::serial::k_qubit_unitary(amps, dim, bits, u);
            break;
        }
    }
}

void apply_driver_fastpath(Statevector& sv, const DriverTerm& term, double beta, ExecPolicy policy) {
    const int n = sv.num_qubits;
    for (int q : term.support)
        if (q < 1 || q > n) throw std::invalid_argument("driver support out of range");
    uint64_t mask = support_mask(term, n);
    uint64_t pv = pattern_bits(term, n, false);
    uint64_t pvb = pattern_bits(term, n, true);
    if (policy == ExecPolicy::Parallel)
        kernels::omp::pair_rotation(sv.amps.data(), sv.dim(), mask, pv, pvb, beta);
    else
        kernels::serial::pair_rotation(sv.amps.data(), sv.dim(), mask, pv, pvb, beta);
}

double expectation_diagonal(const Statevector& sv, const ObjectiveDiagonal& diag, ExecPolicy policy) {
    if (diag.values.size() != sv.dim())
        throw std::invalid_argument("diagonal length does not match state dimension");
    return policy == ExecPolicy::Parallel
               ? kernels::omp::expectation_diagonal(sv.amps.data(), sv.dim(), diag.values.data())
               : kernels::serial::expectation_diagonal(sv.amps.data(), sv.dim(), diag.values.data());
}

double expectation_row_operator(const Statevector& sv, const ConstraintRow& row, ExecPolicy policy) {
    const int n = sv.num_qubits;
    if (static_cast<int>(row.coeffs.size()) != n)
        throw std::invalid_argument("row length does not match qubit count");
    // Materialize the diagonal once; the row operator is sparse but the
    // entry formula is cheap enough at desk scale.
    std::vector<double> diag(sv.dim());
    const bool par = policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long long idx = 0; idx < static_cast<long long>(sv.dim()); ++idx)
        diag[static_cast<size_t>(idx)] = row_operator_entry(row, static_cast<size_t>(idx), n);
    return par ? kernels::omp::expectation_diagonal(sv.amps.data(), sv.dim(), diag.data())
               : kernels::serial::expectation_diagonal(sv.amps.data(), sv.dim(), diag.data());
}

double norm_sq(const Statevector& sv, ExecPolicy policy) {
    return policy == ExecPolicy::Parallel ? kernels::omp::norm_sq(sv.amps.data(), sv.dim())
                                          : kernels::serial::norm_sq(sv.amps.data(), sv.dim());
}

SampleSet sample(const Statevector& sv, long long shots, uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("need at least one shot");
    const size_t dim = sv.dim();
    std::vector<double> cumulative(dim);
    double acc = 0;
    for (size_t i = 0; i < dim; ++i) {
        acc += std::norm(sv.amps[i]);
        cumulative[i] = acc;
    }
    const double total = acc;

    SplitMix64 rng(seed);
    std::map<size_t, long long> hits;
    for (long long s = 0; s < shots; ++s) {
        double u = rng.next_double() * total;
        size_t idx = static_cast<size_t>(
            std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        if (idx >= dim) idx = dim - 1;
        ++hits[idx];
    }

    SampleSet out;
    out.shots = shots;
    for (const auto& [idx, count] : hits)
        out.counts[bits_to_string(index_to_bits(idx, sv.num_qubits))] = count;
    return out;
}

Statevector simulate(const Circuit& c, const ParameterVector& params, Statevector init,
                     bool use_fastpath, ExecPolicy policy) {
    if (init.num_qubits != c.num_qubits)
        throw std::invalid_argument("initial state does not match circuit width");
    Statevector sv = std::move(init);

    std::map<size_t, const DriverBlockTag*> block_at;
    if (use_fastpath)
        for (const auto& tag : c.driver_blocks) block_at[tag.first_gate] = &tag;

    size_t g = 0;
    while (g < c.gates.size()) {
        auto it = block_at.find(g);
        if (it != block_at.end()) {
            const DriverBlockTag& tag = *it->second;
            apply_driver_fastpath(sv, tag.term, resolve_angle(tag.angle, &params), policy);
            g += tag.gate_count;
        } else {
            apply_gate(sv, c.gates[g], &params, policy);
            ++g;
        }
    }

    double norm = norm_sq(sv, policy);
    if (std::abs(norm - 1.0) > 1e-6)
        throw std::runtime_error("statevector norm drifted to " + std::to_string(norm));
    return sv;
}

} // namespace chocoq

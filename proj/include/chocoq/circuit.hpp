#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "chocoq/dense.hpp"
#include "chocoq/hamiltonian.hpp"

namespace chocoq {

/// Angle of a parameterized gate: either a bound constant or
/// scale * params[slot]. Slots index the flattened parameter vector
/// (gammas first, then betas).
struct AngleRef {
    int slot = -1;
    double scale = 1.0;
    double constant = 0.0;

    static AngleRef fixed(double value) { return {-1, 0.0, value}; }
    static AngleRef param(int slot, double scale = 1.0) { return {slot, scale, 0.0}; }
    AngleRef negated() const { return {slot, -scale, -constant}; }
};

enum class GateKind {
    H,
    X,
    CX,       // qubits = {control, target}
    RZ,       // diag(e^{-i a/2}, e^{i a/2})
    MCP,      // phase e^{i a} on the all-ones pattern of its operands
    ObjPhase, // amp[idx] *= e^{-i a * diagonal[idx]}, acts on all qubits
    ExpXY,    // e^{-i a H} for an XY-chain Hamiltonian on the listed qubits
};

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<int> qubits; // 1-based, distinct; empty for ObjPhase
    AngleRef angle{};
    std::shared_ptr<const ObjectiveDiagonal> diagonal;         // ObjPhase
    std::shared_ptr<const dense::HermitianEigen> generator;    // ExpXY, over `qubits`

    Gate() = default;
    Gate(GateKind k, std::vector<int> q, AngleRef a = {}) : kind(k), qubits(std::move(q)), angle(a) {}
};

/// 2L adjustable parameters: one (gamma, beta) pair per layer.
struct ParameterVector {
    std::vector<double> gammas;
    std::vector<double> betas;

    size_t layers() const { return gammas.size(); }
    size_t dim() const { return gammas.size() + betas.size(); }
    double flat(size_t slot) const {
        return slot < gammas.size() ? gammas[slot] : betas[slot - gammas.size()];
    }
    static ParameterVector from_flat(const std::vector<double>& theta);
};

double resolve_angle(const AngleRef& angle, const ParameterVector* params);

/// Contiguous gate range implementing e^{-i beta H_c(u)}; the simulator may
/// execute the analytic pair rotation instead of the expanded gates.
struct DriverBlockTag {
    size_t first_gate = 0;
    size_t gate_count = 0;
    DriverTerm term;
    AngleRef angle;
};

struct Circuit {
    int num_qubits = 0;
    int num_layers = 0;
    std::vector<Gate> gates;
    std::vector<DriverBlockTag> driver_blocks;
};

/// Basis-change gates G mapping the paired eigenstates
/// (|v> +- |vbar>)/sqrt(2) of a driver term to |01..1> and |11..1>: over the
/// support qubits q_1..q_k, CX(q_{i-1} -> q_i) for i = k..2 with an X(q_i)
/// whenever v_i = v_{i-1}, then H(q_1).
std::vector<Gate> build_g_gates(const DriverTerm& term);

/// Exact block for e^{-i beta H_c(u)}: G, X(q_1), MCP(-beta), X(q_1),
/// MCP(+beta), G^dagger, with the MCP over the full support targeting q_k.
std::vector<Gate> build_driver_block(const DriverTerm& term, const AngleRef& beta);

/// Full ansatz: X gates preparing |x*>, then L layers of the objective
/// phase followed by one driver block per term (in term order). Driver
/// blocks are tagged for the simulator fast path. Rejects infeasible x*.
Circuit assemble_chocoq_circuit(const Problem& p, std::shared_ptr<const ObjectiveDiagonal> diag,
                                const std::vector<DriverTerm>& terms, int layers, const Bits& x_star);

enum class DepthMode { Logical, EstimatedBasic };

/// Linear cost model for a multi-control phase with k controls in
/// estimated-basic mode: depth a*k + b. The constants approximate the
/// ancilla-ladder construction and are configurable.
struct McpCostModel {
    long long a = 16;
    long long b = 4;
};

struct DepthReport {
    long long depth = 0;
    std::map<std::string, long long> counts;
};

/// Greedy as-soon-as-possible layering. Logical mode charges every gate
/// depth 1. Estimated-basic mode charges MCP via the linear model, ExpXY as
/// 4^k (generic dense-unitary cost), everything else 1.
DepthReport depth_and_counts(const Circuit& c, DepthMode mode, const McpCostModel& model = {});

/// Line-per-gate text form: OpenQASM-2 statements for H/X/CX/RZ; MCP and
/// ObjPhase as commented macro lines. All parameter slots must be bound by
/// `params`. Angles print with enough digits to round-trip exactly.
std::string export_circuit(const Circuit& c, const ParameterVector& params);

/// Parses text produced by export_circuit back into a circuit with constant
/// angles. ObjPhase lines reattach the supplied diagonal (may be null).
Circuit parse_circuit(const std::string& text,
                      std::shared_ptr<const ObjectiveDiagonal> diagonal = nullptr);

} // namespace chocoq

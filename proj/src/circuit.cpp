#include "chocoq/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "chocoq/bits.hpp"

namespace chocoq {

ParameterVector ParameterVector::from_flat(const std::vector<double>& theta) {
    if (theta.size() % 2 != 0) throw std::invalid_argument("flat parameter vector must have even length");
    ParameterVector pv;
    const size_t L = theta.size() / 2;
    pv.gammas.assign(theta.begin(), theta.begin() + static_cast<long>(L));
    pv.betas.assign(theta.begin() + static_cast<long>(L), theta.end());
    return pv;
}

double resolve_angle(const AngleRef& angle, const ParameterVector* params) {
    if (angle.slot < 0) return angle.constant;
    if (params == nullptr || static_cast<size_t>(angle.slot) >= params->dim())
        throw std::invalid_argument("unbound parameter slot");
    return angle.scale * params->flat(static_cast<size_t>(angle.slot)) + angle.constant;
}

std::vector<Gate> build_g_gates(const DriverTerm& term) {
    const auto& q = term.support;
    const auto& v = term.v;
    const int k = static_cast<int>(q.size());
    std::vector<Gate> gates;
    for (int i = k; i >= 2; --i) {
        gates.push_back({GateKind::CX, {q[static_cast<size_t>(i - 2)], q[static_cast<size_t>(i - 1)]}});
        if (v[static_cast<size_t>(i - 1)] == v[static_cast<size_t>(i - 2)])
            gates.push_back({GateKind::X, {q[static_cast<size_t>(i - 1)]}});
    }
    gates.push_back({GateKind::H, {q[0]}});
    return gates;
}

std::vector<Gate> build_driver_block(const DriverTerm& term, const AngleRef& beta) {
    std::vector<Gate> g = build_g_gates(term);
    std::vector<Gate> block = g;
    block.push_back({GateKind::X, {term.support[0]}});
    block.push_back({GateKind::MCP, term.support, beta.negated()});
    block.push_back({GateKind::X, {term.support[0]}});
    block.push_back({GateKind::MCP, term.support, beta});
    // G is made of self-adjoint gates, so its adjoint is the reversed list.
    for (auto it = g.rbegin(); it != g.rend(); ++it) block.push_back(*it);
    return block;
}

Circuit assemble_chocoq_circuit(const Problem& p, std::shared_ptr<const ObjectiveDiagonal> diag,
                                const std::vector<DriverTerm>& terms, int layers, const Bits& x_star) {
    if (layers < 0) throw std::invalid_argument("layer count must be nonnegative");
    if (!check_feasible(p, x_star))
        throw std::invalid_argument("initial assignment violates the constraints");

    Circuit c;
    c.num_qubits = p.num_vars;
    c.num_layers = layers;
    for (int q = 1; q <= p.num_vars; ++q)
        if (x_star[static_cast<size_t>(q - 1)]) c.gates.push_back({GateKind::X, {q}});

    const int L = layers;
    for (int l = 0; l < L; ++l) {
        Gate phase{GateKind::ObjPhase, {}, AngleRef::param(l)};
        phase.diagonal = diag;
        c.gates.push_back(std::move(phase));
        for (const auto& term : terms) {
            AngleRef beta = AngleRef::param(L + l);
            DriverBlockTag tag;
            tag.first_gate = c.gates.size();
            tag.term = term;
            tag.angle = beta;
            std::vector<Gate> block = build_driver_block(term, beta);
            tag.gate_count = block.size();
            for (auto& gate : block) c.gates.push_back(std::move(gate));
            c.driver_blocks.push_back(std::move(tag));
        }
    }
    return c;
}

namespace {

const char* kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::CX: return "CX";
        case GateKind::RZ: return "RZ";
        case GateKind::MCP: return "MCP";
        case GateKind::ObjPhase: return "ObjPhase";
        case GateKind::ExpXY: return "ExpXY";
    }
    return "?";
}

long long gate_duration(const Gate& g, DepthMode mode, const McpCostModel& model) {
    if (mode == DepthMode::Logical) return 1;
    switch (g.kind) {
        case GateKind::MCP: {
            long long controls = static_cast<long long>(g.qubits.size()) - 1;
            return controls <= 0 ? 1 : model.a * controls + model.b;
        }
        case GateKind::ExpXY:
            return 1LL << (2 * g.qubits.size());
        default:
            return 1;
    }
}

std::string format_angle(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace

DepthReport depth_and_counts(const Circuit& c, DepthMode mode, const McpCostModel& model) {
    DepthReport report;
    std::vector<long long> busy_until(static_cast<size_t>(c.num_qubits) + 1, 0);
    for (const auto& g : c.gates) {
        ++report.counts[kind_name(g.kind)];
        long long start = 0;
        if (g.kind == GateKind::ObjPhase) {
            for (int q = 1; q <= c.num_qubits; ++q)
                start = std::max(start, busy_until[static_cast<size_t>(q)]);
        } else {
            for (int q : g.qubits) start = std::max(start, busy_until[static_cast<size_t>(q)]);
        }
        long long end = start + gate_duration(g, mode, model);
        if (g.kind == GateKind::ObjPhase) {
            for (int q = 1; q <= c.num_qubits; ++q) busy_until[static_cast<size_t>(q)] = end;
        } else {
            for (int q : g.qubits) busy_until[static_cast<size_t>(q)] = end;
        }
        report.depth = std::max(report.depth, end);
    }
    return report;
}

std::string export_circuit(const Circuit& c, const ParameterVector& params) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.num_qubits << "];\n";
    auto op = [](int q) { return "q[" + std::to_string(q - 1) + "]"; };
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::H:
                out << "h " << op(g.qubits[0]) << ";\n";
                break;
            case GateKind::X:
                out << "x " << op(g.qubits[0]) << ";\n";
                break;
            case GateKind::CX:
                out << "cx " << op(g.qubits[0]) << "," << op(g.qubits[1]) << ";\n";
                break;
            case GateKind::RZ:
                out << "rz(" << format_angle(resolve_angle(g.angle, &params)) << ") "
                    << op(g.qubits[0]) << ";\n";
                break;
            case GateKind::MCP: {
                out << "// mcp(" << format_angle(resolve_angle(g.angle, &params)) << ") ";
                for (size_t i = 0; i < g.qubits.size(); ++i)
                    out << (i ? "," : "") << op(g.qubits[i]);
                out << ";\n";
                break;
            }
            case GateKind::ObjPhase:
                out << "// objphase(" << format_angle(resolve_angle(g.angle, &params)) << ");\n";
                break;
            case GateKind::ExpXY:
                throw std::invalid_argument("XY-chain exponentials have no text form");
        }
    }
    return out.str();
}

namespace {

int parse_operand(const std::string& token, int num_qubits) {
    // token is q[<i>] with 0-based i
    if (token.size() < 4 || token.substr(0, 2) != "q[" || token.back() != ']')
        throw std::invalid_argument("bad operand: " + token);
    int idx = std::stoi(token.substr(2, token.size() - 3));
    if (idx < 0 || idx >= num_qubits) throw std::invalid_argument("operand out of range: " + token);
    return idx + 1;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

Circuit parse_circuit(const std::string& text, std::shared_ptr<const ObjectiveDiagonal> diagonal) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "OPENQASM 2.0;" || line.rfind("include", 0) == 0) continue;
        if (line.back() == ';') line.pop_back();
        if (line.rfind("qreg q[", 0) == 0) {
            c.num_qubits = std::stoi(line.substr(7, line.size() - 8));
            continue;
        }
        bool macro = line.rfind("// ", 0) == 0;
        std::string body = macro ? line.substr(3) : line;
        size_t sp = body.find(' ');
        std::string head = body.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : body.substr(sp + 1);

        auto angle_of = [&](const std::string& h) {
            size_t open = h.find('('), close = h.rfind(')');
            if (open == std::string::npos || close == std::string::npos || close <= open)
                throw std::invalid_argument("missing angle in: " + line);
            return std::stod(h.substr(open + 1, close - open - 1));
        };

        if (!macro && head == "h") {
            c.gates.push_back({GateKind::H, {parse_operand(rest, c.num_qubits)}});
        } else if (!macro && head == "x") {
            c.gates.push_back({GateKind::X, {parse_operand(rest, c.num_qubits)}});
        } else if (!macro && head == "cx") {
            auto parts = split(rest, ',');
            if (parts.size() != 2) throw std::invalid_argument("cx needs two operands: " + line);
            c.gates.push_back({GateKind::CX,
                               {parse_operand(parts[0], c.num_qubits), parse_operand(parts[1], c.num_qubits)}});
        } else if (!macro && head.rfind("rz(", 0) == 0) {
            c.gates.push_back({GateKind::RZ, {parse_operand(rest, c.num_qubits)}, AngleRef::fixed(angle_of(head))});
        } else if (macro && head.rfind("mcp(", 0) == 0) {
            std::vector<int> qs;
            for (const auto& part : split(rest, ',')) qs.push_back(parse_operand(part, c.num_qubits));
            c.gates.push_back({GateKind::MCP, std::move(qs), AngleRef::fixed(angle_of(head))});
        } else if (macro && head.rfind("objphase(", 0) == 0) {
            Gate g{GateKind::ObjPhase, {}, AngleRef::fixed(angle_of(head))};
            g.diagonal = diagonal;
            c.gates.push_back(std::move(g));
        } else {
            throw std::invalid_argument("unrecognized line: " + line);
        }
    }
    if (c.num_qubits == 0) throw std::invalid_argument("missing qreg declaration");
    return c;
}

} // namespace chocoq

#pragma once

#include <complex>
#include <vector>

#include "chocoq/bits.hpp"
#include "chocoq/circuit.hpp"
#include "chocoq/problem.hpp"
#include "chocoq/statevector.hpp"

namespace chocoq::test {

/// Four-variable demo fixture: constraints x1 - x3 = 0 and x1 + x2 + x4 = 1,
/// objective maximize x1 + x3. Unique optimum 1010, feasible set
/// {1010, 0100, 0001}.
inline Problem demo_problem() {
    Objective obj;
    obj.direction = Direction::Maximize;
    obj.add_linear(1, Rational(1));
    obj.add_linear(3, Rational(1));
    std::vector<ConstraintRow> rows = {{{1, 0, -1, 0}, 0}, {{1, 1, 0, 1}, 1}};
    return make_problem(4, std::move(obj), ConstraintSystem(std::move(rows), 4));
}

/// Independent brute-force route: plain loop over all 2^n assignments,
/// checking rows directly (no pruning machinery shared with the library).
inline std::vector<Bits> exhaustive_feasible(const Problem& p) {
    std::vector<Bits> out;
    const size_t dim = 1ULL << p.num_vars;
    for (size_t idx = 0; idx < dim; ++idx) {
        Bits x = index_to_bits(idx, p.num_vars);
        bool ok = true;
        for (const auto& row : p.constraints.rows()) {
            long long sum = 0;
            for (int i = 0; i < p.num_vars; ++i)
                if (x[static_cast<size_t>(i)]) sum += row.coeffs[static_cast<size_t>(i)];
            if (sum != row.rhs) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(std::move(x));
    }
    return out;
}

/// Independent matrix rank via fraction-free (Bareiss) elimination on
/// 128-bit integers.
inline int bareiss_rank(std::vector<std::vector<long long>> m) {
    if (m.empty()) return 0;
    using I = __int128;
    const size_t rows = m.size(), cols = m[0].size();
    std::vector<std::vector<I>> a(rows, std::vector<I>(cols));
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) a[r][c] = m[r][c];
    size_t rank = 0;
    I prev = 1;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t sel = rank;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[rank], a[sel]);
        for (size_t r = rank + 1; r < rows; ++r) {
            for (size_t c = col + 1; c < cols; ++c)
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

inline std::vector<std::vector<long long>> coeff_matrix(const ConstraintSystem& cs) {
    std::vector<std::vector<long long>> m;
    for (const auto& row : cs.rows()) m.push_back(row.coeffs);
    return m;
}

/// Builds the unitary of a gate list on k qubits column by column through
/// the serial simulator.
inline dense::CMatrix gate_list_unitary(const std::vector<Gate>& gates, int k) {
    const size_t dim = 1ULL << k;
    dense::CMatrix u = dense::CMatrix::zero(dim);
    for (size_t col = 0; col < dim; ++col) {
        Statevector sv = prepare_basis_state(k, index_to_bits(col, k));
        for (const auto& g : gates) apply_gate(sv, g, nullptr, ExecPolicy::Serial);
        for (size_t row = 0; row < dim; ++row) u.at(row, col) = sv.amps[row];
    }
    return u;
}

/// Max amplitude difference after aligning global phase.
inline double state_diff_up_to_phase(const std::vector<std::complex<double>>& a,
                                     const std::vector<std::complex<double>>& b) {
    size_t best = 0;
    double mag = -1;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i]) > mag) {
            mag = std::abs(a[i]);
            best = i;
        }
    if (mag <= 0) {
        double m = 0;
        for (const auto& v : b) m = std::max(m, std::abs(v));
        return m;
    }
    std::complex<double> phase = b[best] / a[best];
    double pm = std::abs(phase);
    if (pm == 0) return 1.0;
    phase /= pm;
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] * phase - b[i]));
    return m;
}

/// Restricts a driver term to its support register (support qubit t of the
/// original becomes qubit t+1 of a k-qubit register).
inline DriverTerm restrict_to_support(const DriverTerm& term) {
    std::vector<int8_t> u;
    u.reserve(term.support.size());
    for (uint8_t vi : term.v) u.push_back(vi ? 1 : -1);
    return make_driver_term(u);
}

} // namespace chocoq::test

#include "chocoq/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "chocoq/bits.hpp"
#include "chocoq/dense.hpp"

namespace chocoq {

DriverTerm make_driver_term(const std::vector<int8_t>& u) {
    DriverTerm term;
    term.u = u;
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        term.support.push_back(static_cast<int>(i) + 1);
        term.v.push_back(u[i] > 0 ? 1 : 0);
    }
    if (term.support.empty())
        throw std::invalid_argument("driver term needs a nonempty support");
    return term;
}

std::vector<DriverTerm> build_driver_terms(const ConstraintBasis& basis) {
    std::vector<DriverTerm> terms;
    terms.reserve(basis.vectors.size());
    for (const auto& u : basis.vectors) terms.push_back(make_driver_term(u));
    return terms;
}

double row_operator_entry(const ConstraintRow& row, size_t idx, int n) {
    long long sum = 0;
    for (int i = 0; i < n; ++i) {
        long long c = row.coeffs[static_cast<size_t>(i)];
        if (c == 0) continue;
        bool bit = (idx >> qubit_bit(i + 1, n)) & 1;
        sum += bit ? -c : c;
    }
    return static_cast<double>(sum);
}

namespace {

struct FlatObjective {
    double constant = 0;
    std::vector<std::pair<int, double>> linear;           // (bit position, coeff)
    std::vector<std::tuple<int, int, double>> quadratic;  // (bit, bit, coeff)
    double sign = 1.0;                                    // -1 when native maximize
};

FlatObjective flatten(const Problem& p) {
    FlatObjective f;
    f.sign = p.objective.direction == Direction::Maximize ? -1.0 : 1.0;
    f.constant = p.objective.constant.to_double();
    for (const auto& [var, coeff] : p.objective.linear)
        f.linear.emplace_back(qubit_bit(var, p.num_vars), coeff.to_double());
    for (const auto& [key, coeff] : p.objective.quadratic)
        f.quadratic.emplace_back(qubit_bit(key.first, p.num_vars), qubit_bit(key.second, p.num_vars),
                                 coeff.to_double());
    return f;
}

double flat_value(const FlatObjective& f, size_t idx) {
    double v = f.constant;
    for (const auto& [bit, coeff] : f.linear)
        if ((idx >> bit) & 1) v += coeff;
    for (const auto& [b1, b2, coeff] : f.quadratic)
        if (((idx >> b1) & 1) && ((idx >> b2) & 1)) v += coeff;
    return f.sign * v;
}

constexpr int kDiagonalQubitLimit = 26;

void check_diagonal_size(const Problem& p) {
    if (p.num_vars > kDiagonalQubitLimit)
        throw std::invalid_argument("objective diagonal capped at " +
                                    std::to_string(kDiagonalQubitLimit) + " qubits");
}

} // namespace

ObjectiveDiagonal build_objective_diagonal(const Problem& p, ExecPolicy policy) {
    check_diagonal_size(p);
    const FlatObjective f = flatten(p);
    ObjectiveDiagonal diag;
    diag.num_qubits = p.num_vars;
    const size_t dim = 1ULL << p.num_vars;
    diag.values.resize(dim);
    double* out = diag.values.data();
    const bool parallel = policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (parallel)
    for (long long idx = 0; idx < static_cast<long long>(dim); ++idx)
        out[idx] = flat_value(f, static_cast<size_t>(idx));
    return diag;
}

ObjectiveDiagonal build_penalty_objective(const Problem& p, double lambda_pen, ExecPolicy policy) {
    if (!(lambda_pen > 0)) throw std::invalid_argument("penalty coefficient must be positive");
    check_diagonal_size(p);
    const FlatObjective f = flatten(p);

    struct FlatRow {
        std::vector<std::pair<int, double>> coeffs; // (bit position, coefficient)
        double rhs;
    };
    std::vector<FlatRow> rows;
    for (const auto& row : p.constraints.rows()) {
        FlatRow fr;
        fr.rhs = static_cast<double>(row.rhs);
        for (int i = 0; i < p.num_vars; ++i)
            if (row.coeffs[static_cast<size_t>(i)] != 0)
                fr.coeffs.emplace_back(qubit_bit(i + 1, p.num_vars),
                                       static_cast<double>(row.coeffs[static_cast<size_t>(i)]));
        rows.push_back(std::move(fr));
    }

    ObjectiveDiagonal diag;
    diag.num_qubits = p.num_vars;
    const size_t dim = 1ULL << p.num_vars;
    diag.values.resize(dim);
    double* out = diag.values.data();
    const bool parallel = policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (parallel)
    for (long long idx = 0; idx < static_cast<long long>(dim); ++idx) {
        double v = flat_value(f, static_cast<size_t>(idx));
        for (const auto& row : rows) {
            double residual = -row.rhs;
            for (const auto& [bit, coeff] : row.coeffs)
                if ((static_cast<size_t>(idx) >> bit) & 1) residual += coeff;
            v += lambda_pen * residual * residual;
        }
        out[idx] = v;
    }
    return diag;
}

std::vector<CyclicChain> build_cyclic_driver(const Problem& p) {
    std::vector<CyclicChain> chains;
    for (const auto& row : p.constraints.rows()) {
        CyclicChain chain;
        for (int i = 0; i < p.num_vars; ++i)
            if (row.coeffs[static_cast<size_t>(i)] != 0) chain.involved.push_back(i + 1);
        for (size_t t = 0; t + 1 < chain.involved.size(); ++t)
            chain.pairs.emplace_back(chain.involved[t], chain.involved[t + 1]);
        chains.push_back(std::move(chain));
    }
    return chains;
}

double commutator_norm(const DriverTerm& term, const ConstraintRow& row, int n) {
    if (n > 12) throw std::invalid_argument("dense oracle capped at 12 qubits");
    if (static_cast<int>(term.u.size()) != n || static_cast<int>(row.coeffs.size()) != n)
        throw std::invalid_argument("term/row length mismatch");
    dense::CMatrix h = dense::driver_term_dense(term.u);
    const size_t dim = 1ULL << n;
    std::vector<double> d(dim);
    for (size_t idx = 0; idx < dim; ++idx) d[idx] = row_operator_entry(row, idx, n);
    // Row operator is diagonal, so (C H - H C)[r][c] = h[r][c] * (d_r - d_c).
    double m = 0;
    for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < dim; ++c) {
            double mag = std::abs(h.at(r, c) * (d[r] - d[c]));
            if (mag > m) m = mag;
        }
    return m;
}

} // namespace chocoq

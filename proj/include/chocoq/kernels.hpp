#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "chocoq/dense.hpp"
#include "chocoq/hamiltonian.hpp"

namespace chocoq::kernels {

using cplx = std::complex<double>;

/// Amplitude-level kernels. Every kernel exists in two variants with
/// identical arithmetic per amplitude: a plain serial reference and an
/// OpenMP one. The parallel variants write each amplitude exactly once (or
/// reduce over fixed-size chunks combined in index order), so both variants
/// produce bitwise identical results; the tests hold them to that.

namespace serial {

void single_qubit(cplx* amps, size_t dim, int bit, const cplx m[4]);
void pauli_x(cplx* amps, size_t dim, int bit);
void cx(cplx* amps, size_t dim, int control_bit, int target_bit);
void mcp(cplx* amps, size_t dim, uint64_t mask, double angle);
void phase_diagonal(cplx* amps, size_t dim, const double* diag, double gamma);
void pair_rotation(cplx* amps, size_t dim, uint64_t support_mask, uint64_t pattern_v,
                   uint64_t pattern_vbar, double beta);
void k_qubit_unitary(cplx* amps, size_t dim, const std::vector<int>& bits, const dense::CMatrix& u);
double expectation_diagonal(const cplx* amps, size_t dim, const double* diag);
double norm_sq(const cplx* amps, size_t dim);

} // namespace serial

namespace omp {

void single_qubit(cplx* amps, size_t dim, int bit, const cplx m[4]);
void pauli_x(cplx* amps, size_t dim, int bit);
void cx(cplx* amps, size_t dim, int control_bit, int target_bit);
void mcp(cplx* amps, size_t dim, uint64_t mask, double angle);
void phase_diagonal(cplx* amps, size_t dim, const double* diag, double gamma);
void pair_rotation(cplx* amps, size_t dim, uint64_t support_mask, uint64_t pattern_v,
                   uint64_t pattern_vbar, double beta);
void k_qubit_unitary(cplx* amps, size_t dim, const std::vector<int>& bits, const dense::CMatrix& u);
double expectation_diagonal(const cplx* amps, size_t dim, const double* diag);
double norm_sq(const cplx* amps, size_t dim);

} // namespace omp

} // namespace chocoq::kernels

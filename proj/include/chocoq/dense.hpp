#pragma once

#include <complex>
#include <vector>

#include "chocoq/hamiltonian.hpp"

namespace chocoq::dense {

using cplx = std::complex<double>;

/// Small dense complex matrix, row-major. Used by the verification oracles
/// (capped at 12 qubits) and by the cyclic baseline's chain exponentials.
struct CMatrix {
    size_t dim = 0;
    std::vector<cplx> a;

    static CMatrix zero(size_t dim) { return CMatrix{dim, std::vector<cplx>(dim * dim)}; }
    static CMatrix identity(size_t dim);

    cplx& at(size_t r, size_t c) { return a[r * dim + c]; }
    const cplx& at(size_t r, size_t c) const { return a[r * dim + c]; }
};

CMatrix mul(const CMatrix& x, const CMatrix& y);
CMatrix add(const CMatrix& x, const CMatrix& y);
CMatrix dagger(const CMatrix& x);
CMatrix kron(const CMatrix& x, const CMatrix& y);
std::vector<cplx> mul_vec(const CMatrix& x, const std::vector<cplx>& v);

double max_abs(const CMatrix& x);
double max_abs_diff(const CMatrix& x, const CMatrix& y);

/// Max-entry distance after aligning global phase (phase taken from the
/// largest-magnitude entry of x).
double max_abs_diff_up_to_phase(const CMatrix& x, const CMatrix& y);

/// Dense H_c(u) on n qubits from the tensor-product form: the product of
/// per-qubit sigma^{u_i} factors plus its mirror with u negated. This is the
/// independent construction route the decomposition and fastpath are checked
/// against.
CMatrix driver_term_dense(const std::vector<int8_t>& u);

/// Dense XY chain sum over the given pairs, on a register of n qubits
/// (qubit numbering 1-based, x1 = most significant).
CMatrix xy_chain_dense(const std::vector<std::pair<int, int>>& pairs, int n);

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// h = V diag(values) V^dagger with V unitary (columns are eigenvectors).
struct HermitianEigen {
    std::vector<double> values;
    CMatrix vectors;
};
HermitianEigen hermitian_eigen(const CMatrix& h);

/// e^{-i t H} from a precomputed eigendecomposition.
CMatrix expm_minus_i(const HermitianEigen& eig, double t);
/// e^{-i t H} applied to a vector.
std::vector<cplx> expm_minus_i_apply(const HermitianEigen& eig, double t, const std::vector<cplx>& v);

} // namespace chocoq::dense

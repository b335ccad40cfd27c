#include <algorithm>
#include <cmath>

#include "chocoq/kernels.hpp"

// OpenMP kernels. Each loop body matches the serial reference exactly;
// parallelism only changes the iteration schedule, never the arithmetic.
// Reductions go through fixed-size chunk partials summed in index order so
// the result does not depend on the thread count.

namespace chocoq::kernels::omp {

void single_qubit(cplx* amps, size_t dim, int bit, const cplx m[4]) {
    const size_t stride = 1ULL << bit;
    const long long pairs = static_cast<long long>(dim >> 1);
#pragma omp parallel for schedule(static)
    for (long long p = 0; p < pairs; ++p) {
        size_t i0 = ((static_cast<size_t>(p) >> bit) << (bit + 1)) | (static_cast<size_t>(p) & (stride - 1));
        size_t i1 = i0 | stride;
        cplx a0 = amps[i0], a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void pauli_x(cplx* amps, size_t dim, int bit) {
    const size_t stride = 1ULL << bit;
    const long long pairs = static_cast<long long>(dim >> 1);
#pragma omp parallel for schedule(static)
    for (long long p = 0; p < pairs; ++p) {
        size_t i0 = ((static_cast<size_t>(p) >> bit) << (bit + 1)) | (static_cast<size_t>(p) & (stride - 1));
        std::swap(amps[i0], amps[i0 | stride]);
    }
}

void cx(cplx* amps, size_t dim, int control_bit, int target_bit) {
    const size_t cmask = 1ULL << control_bit;
    const size_t tmask = 1ULL << target_bit;
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < static_cast<long long>(dim); ++idx) {
        size_t i = static_cast<size_t>(idx);
        if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
    }
}

void mcp(cplx* amps, size_t dim, uint64_t mask, double angle) {
    const cplx phase = std::polar(1.0, angle);
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < static_cast<long long>(dim); ++idx) {
        size_t i = static_cast<size_t>(idx);
        if ((i & mask) == mask) amps[i] *= phase;
    }
}

void phase_diagonal(cplx* amps, size_t dim, const double* diag, double gamma) {
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < static_cast<long long>(dim); ++idx)
        amps[idx] *= std::polar(1.0, -gamma * diag[idx]);
}

void pair_rotation(cplx* amps, size_t dim, uint64_t support_mask, uint64_t pattern_v,
                   uint64_t pattern_vbar, double beta) {
    const double c = std::cos(beta);
    const cplx ms = cplx(0, -std::sin(beta));
    std::vector<int> off_bits;
    const int nbits = 64 - __builtin_clzll(dim) - 1;
    for (int b = 0; b < nbits; ++b)
        if (!((support_mask >> b) & 1)) off_bits.push_back(b);
    const long long configs = 1LL << off_bits.size();
#pragma omp parallel for schedule(static)
    for (long long cfg = 0; cfg < configs; ++cfg) {
        size_t base = 0;
        for (size_t b = 0; b < off_bits.size(); ++b)
            if ((static_cast<size_t>(cfg) >> b) & 1) base |= 1ULL << off_bits[b];
        size_t iv = base | pattern_v;
        size_t ivb = base | pattern_vbar;
        cplx av = amps[iv], avb = amps[ivb];
        amps[iv] = c * av + ms * avb;
        amps[ivb] = ms * av + c * avb;
    }
}

void k_qubit_unitary(cplx* amps, size_t dim, const std::vector<int>& bits, const dense::CMatrix& u) {
    const size_t k = bits.size();
    const size_t sub = 1ULL << k;
    uint64_t mask = 0;
    for (int b : bits) mask |= 1ULL << b;
    std::vector<int> off_bits;
    const int nbits = 64 - __builtin_clzll(dim) - 1;
    for (int b = 0; b < nbits; ++b)
        if (!((mask >> b) & 1)) off_bits.push_back(b);
    const long long configs = 1LL << off_bits.size();
#pragma omp parallel for schedule(static)
    for (long long cfg = 0; cfg < configs; ++cfg) {
        size_t base = 0;
        for (size_t b = 0; b < off_bits.size(); ++b)
            if ((static_cast<size_t>(cfg) >> b) & 1) base |= 1ULL << off_bits[b];
        std::vector<cplx> local(sub), mixed(sub);
        for (size_t r = 0; r < sub; ++r) {
            size_t idx = base;
            for (size_t j = 0; j < k; ++j)
                if ((r >> (k - 1 - j)) & 1) idx |= 1ULL << bits[j];
            local[r] = amps[idx];
        }
        for (size_t r = 0; r < sub; ++r) {
            cplx acc = 0;
            for (size_t c2 = 0; c2 < sub; ++c2) acc += u.at(r, c2) * local[c2];
            mixed[r] = acc;
        }
        for (size_t r = 0; r < sub; ++r) {
            size_t idx = base;
            for (size_t j = 0; j < k; ++j)
                if ((r >> (k - 1 - j)) & 1) idx |= 1ULL << bits[j];
            amps[idx] = mixed[r];
        }
    }
}

namespace {
constexpr size_t kChunk = 1ULL << 12;
}

double expectation_diagonal(const cplx* amps, size_t dim, const double* diag) {
    const long long nchunks = static_cast<long long>((dim + kChunk - 1) / kChunk);
    std::vector<double> partial(static_cast<size_t>(nchunks));
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < nchunks; ++c) {
        size_t lo = static_cast<size_t>(c) * kChunk, hi = std::min(dim, lo + kChunk);
        double acc = 0;
        for (size_t i = lo; i < hi; ++i) acc += std::norm(amps[i]) * diag[i];
        partial[static_cast<size_t>(c)] = acc;
    }
    double total = 0;
    for (double x : partial) total += x;
    return total;
}

double norm_sq(const cplx* amps, size_t dim) {
    const long long nchunks = static_cast<long long>((dim + kChunk - 1) / kChunk);
    std::vector<double> partial(static_cast<size_t>(nchunks));
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < nchunks; ++c) {
        size_t lo = static_cast<size_t>(c) * kChunk, hi = std::min(dim, lo + kChunk);
        double acc = 0;
        for (size_t i = lo; i < hi; ++i) acc += std::norm(amps[i]);
        partial[static_cast<size_t>(c)] = acc;
    }
    double total = 0;
    for (double x : partial) total += x;
    return total;
}

} // namespace chocoq::kernels::omp

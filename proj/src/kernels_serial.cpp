#include <algorithm>
#include <cmath>

#include "chocoq/kernels.hpp"

// Serial reference kernels. Kept deliberately free of threading so the
// OpenMP variants can be validated against them bit for bit.

namespace chocoq::kernels::serial {

void single_qubit(cplx* amps, size_t dim, int bit, const cplx m[4]) {
    const size_t stride = 1ULL << bit;
    const size_t pairs = dim >> 1;
    for (size_t p = 0; p < pairs; ++p) {
        size_t i0 = ((p >> bit) << (bit + 1)) | (p & (stride - 1));
        size_t i1 = i0 | stride;
        cplx a0 = amps[i0], a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void pauli_x(cplx* amps, size_t dim, int bit) {
    const size_t stride = 1ULL << bit;
    const size_t pairs = dim >> 1;
    for (size_t p = 0; p < pairs; ++p) {
        size_t i0 = ((p >> bit) << (bit + 1)) | (p & (stride - 1));
        std::swap(amps[i0], amps[i0 | stride]);
    }
}

void cx(cplx* amps, size_t dim, int control_bit, int target_bit) {
    const size_t cmask = 1ULL << control_bit;
    const size_t tmask = 1ULL << target_bit;
    for (size_t idx = 0; idx < dim; ++idx)
        if ((idx & cmask) && !(idx & tmask)) std::swap(amps[idx], amps[idx | tmask]);
}

void mcp(cplx* amps, size_t dim, uint64_t mask, double angle) {
    const cplx phase = std::polar(1.0, angle);
    for (size_t idx = 0; idx < dim; ++idx)
        if ((idx & mask) == mask) amps[idx] *= phase;
}

void phase_diagonal(cplx* amps, size_t dim, const double* diag, double gamma) {
    for (size_t idx = 0; idx < dim; ++idx)
        amps[idx] *= std::polar(1.0, -gamma * diag[idx]);
}

void pair_rotation(cplx* amps, size_t dim, uint64_t support_mask, uint64_t pattern_v,
                   uint64_t pattern_vbar, double beta) {
    const double c = std::cos(beta);
    const cplx ms = cplx(0, -std::sin(beta));
    // Deposit the off-support configuration bits around the support mask.
    std::vector<int> off_bits;
    const int nbits = 64 - __builtin_clzll(dim) - 1;
    for (int b = 0; b < nbits; ++b)
        if (!((support_mask >> b) & 1)) off_bits.push_back(b);
    const size_t configs = 1ULL << off_bits.size();
    for (size_t cfg = 0; cfg < configs; ++cfg) {
        size_t base = 0;
        for (size_t b = 0; b < off_bits.size(); ++b)
            if ((cfg >> b) & 1) base |= 1ULL << off_bits[b];
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
    const size_t configs = 1ULL << off_bits.size();
    std::vector<cplx> local(sub), mixed(sub);
    for (size_t cfg = 0; cfg < configs; ++cfg) {
        size_t base = 0;
        for (size_t b = 0; b < off_bits.size(); ++b)
            if ((cfg >> b) & 1) base |= 1ULL << off_bits[b];
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
    const size_t nchunks = (dim + kChunk - 1) / kChunk;
    double total = 0;
    for (size_t c = 0; c < nchunks; ++c) {
        size_t lo = c * kChunk, hi = std::min(dim, lo + kChunk);
        double acc = 0;
        for (size_t i = lo; i < hi; ++i) acc += std::norm(amps[i]) * diag[i];
        total += acc;
    }
    return total;
}

double norm_sq(const cplx* amps, size_t dim) {
    const size_t nchunks = (dim + kChunk - 1) / kChunk;
    double total = 0;
    for (size_t c = 0; c < nchunks; ++c) {
        size_t lo = c * kChunk, hi = std::min(dim, lo + kChunk);
        double acc = 0;
        for (size_t i = lo; i < hi; ++i) acc += std::norm(amps[i]);
        total += acc;
    }
    return total;
}

} // namespace chocoq::kernels::serial

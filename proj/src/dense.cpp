#include "chocoq/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace chocoq::dense {

CMatrix CMatrix::identity(size_t dim) {
    CMatrix m = zero(dim);
    for (size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix mul(const CMatrix& x, const CMatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("matrix dimension mismatch");
    CMatrix out = CMatrix::zero(x.dim);
    const size_t d = x.dim;
    for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k) {
            cplx xik = x.a[i * d + k];
            if (xik == cplx{}) continue;
            for (size_t j = 0; j < d; ++j) out.a[i * d + j] += xik * y.a[k * d + j];
        }
    return out;
}

CMatrix add(const CMatrix& x, const CMatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("matrix dimension mismatch");
    CMatrix out = x;
    for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
    return out;
}

CMatrix dagger(const CMatrix& x) {
    CMatrix out = CMatrix::zero(x.dim);
    for (size_t r = 0; r < x.dim; ++r)
        for (size_t c = 0; c < x.dim; ++c) out.at(c, r) = std::conj(x.at(r, c));
    return out;
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
    CMatrix out = CMatrix::zero(x.dim * y.dim);
    for (size_t xr = 0; xr < x.dim; ++xr)
        for (size_t xc = 0; xc < x.dim; ++xc) {
            cplx v = x.at(xr, xc);
            if (v == cplx{}) continue;
            for (size_t yr = 0; yr < y.dim; ++yr)
                for (size_t yc = 0; yc < y.dim; ++yc)
                    out.at(xr * y.dim + yr, xc * y.dim + yc) = v * y.at(yr, yc);
        }
    return out;
}

std::vector<cplx> mul_vec(const CMatrix& x, const std::vector<cplx>& v) {
    if (x.dim != v.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
    std::vector<cplx> out(x.dim);
    for (size_t r = 0; r < x.dim; ++r) {
        cplx acc = 0;
        for (size_t c = 0; c < x.dim; ++c) acc += x.at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

double max_abs(const CMatrix& x) {
    double m = 0;
    for (const cplx& v : x.a) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const CMatrix& x, const CMatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("matrix dimension mismatch");
    double m = 0;
    for (size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

double max_abs_diff_up_to_phase(const CMatrix& x, const CMatrix& y) {
    if (x.dim != y.dim) throw std::invalid_argument("matrix dimension mismatch");
    size_t best = 0;
    double best_mag = -1;
    for (size_t i = 0; i < x.a.size(); ++i) {
        double mag = std::abs(x.a[i]);
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag <= 0) return max_abs(y);
    cplx phase = y.a[best] / x.a[best];
    double pm = std::abs(phase);
    if (pm == 0.0) return max_abs_diff(x, y);
    phase /= pm; // pure phase
    double m = 0;
    for (size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] * phase - y.a[i]));
    return m;
}

namespace {

CMatrix sigma_of(int8_t u) {
    CMatrix s = CMatrix::zero(2);
    switch (u) {
        case 1: s.at(1, 0) = 1.0; break;   // raises |0> to |1>
        case -1: s.at(0, 1) = 1.0; break;  // lowers |1> to |0>
        default: s = CMatrix::identity(2); break;
    }
    return s;
}

} // namespace

CMatrix driver_term_dense(const std::vector<int8_t>& u) {
    if (u.size() > 12) throw std::invalid_argument("dense oracle capped at 12 qubits");
    CMatrix fwd = CMatrix::identity(1);
    CMatrix bwd = CMatrix::identity(1);
    for (int8_t ui : u) {
        fwd = kron(fwd, sigma_of(ui));
        bwd = kron(bwd, sigma_of(static_cast<int8_t>(-ui)));
    }
    return add(fwd, bwd);
}

CMatrix xy_chain_dense(const std::vector<std::pair<int, int>>& pairs, int n) {
    if (n > 12) throw std::invalid_argument("dense oracle capped at 12 qubits");
    CMatrix x = CMatrix::zero(2), y = CMatrix::zero(2);
    x.at(0, 1) = 1.0;
    x.at(1, 0) = 1.0;
    y.at(0, 1) = cplx(0, -1);
    y.at(1, 0) = cplx(0, 1);
    CMatrix total = CMatrix::zero(1ULL << n);
    for (auto [a, b] : pairs) {
        CMatrix xx = CMatrix::identity(1), yy = CMatrix::identity(1);
        for (int q = 1; q <= n; ++q) {
            bool hit = q == a || q == b;
            xx = kron(xx, hit ? x : CMatrix::identity(2));
            yy = kron(yy, hit ? y : CMatrix::identity(2));
        }
        total = add(total, add(xx, yy));
    }
    return total;
}

HermitianEigen hermitian_eigen(const CMatrix& h) {
    const size_t d = h.dim;
    CMatrix a = h;
    CMatrix v = CMatrix::identity(d);

    auto off_norm = [&]() {
        double s = 0;
        for (size_t r = 0; r < d; ++r)
            for (size_t c = r + 1; c < d; ++c) s += std::norm(a.at(r, c));
        return s;
    };

    // Rotation R = diag(e^{i phi}, 1) * [[c, -s], [s, c]] on the (p,q)
    // plane turns the Hermitian 2x2 block into the real symmetric case, so
    // the classic angle tan(2 theta) = 2|apq| / (app - aqq) zeroes a(p,q).
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > 1e-26; ++sweep) {
        for (size_t p = 0; p < d; ++p)
            for (size_t q = p + 1; q < d; ++q) {
                cplx apq = a.at(p, q);
                double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                cplx phase = apq / mag;
                double theta = 0.5 * std::atan2(2.0 * mag, app - aqq);
                double c = std::cos(theta);
                double s = std::sin(theta);
                for (size_t k = 0; k < d; ++k) { // A <- A R
                    cplx akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * phase * akp + s * akq;
                    a.at(k, q) = -s * phase * akp + c * akq;
                }
                for (size_t k = 0; k < d; ++k) { // A <- R^dagger A
                    cplx apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * std::conj(phase) * apk + s * aqk;
                    a.at(q, k) = -s * std::conj(phase) * apk + c * aqk;
                }
                for (size_t k = 0; k < d; ++k) { // V <- V R
                    cplx vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * phase * vkp + s * vkq;
                    v.at(k, q) = -s * phase * vkp + c * vkq;
                }
            }
    }

    HermitianEigen out;
    out.values.resize(d);
    for (size_t i = 0; i < d; ++i) out.values[i] = a.at(i, i).real();
    out.vectors = std::move(v);
    return out;
}

CMatrix expm_minus_i(const HermitianEigen& eig, double t) {
    const size_t d = eig.vectors.dim;
    CMatrix scaled = CMatrix::zero(d);
    for (size_t r = 0; r < d; ++r) {
        cplx phase = std::exp(cplx(0, -t * eig.values[r]));
        for (size_t c = 0; c < d; ++c) scaled.at(r, c) = phase * std::conj(eig.vectors.at(c, r));
    }
    return mul(eig.vectors, scaled);
}

std::vector<cplx> expm_minus_i_apply(const HermitianEigen& eig, double t, const std::vector<cplx>& v) {
    const size_t d = eig.vectors.dim;
    if (v.size() != d) throw std::invalid_argument("matrix/vector dimension mismatch");
    std::vector<cplx> coeffs(d);
    for (size_t k = 0; k < d; ++k) {
        cplx acc = 0;
        for (size_t r = 0; r < d; ++r) acc += std::conj(eig.vectors.at(r, k)) * v[r];
        coeffs[k] = acc * std::exp(cplx(0, -t * eig.values[k]));
    }
    std::vector<cplx> out(d);
    for (size_t r = 0; r < d; ++r) {
        cplx acc = 0;
        for (size_t k = 0; k < d; ++k) acc += eig.vectors.at(r, k) * coeffs[k];
        out[r] = acc;
    }
    return out;
}

} // namespace chocoq::dense

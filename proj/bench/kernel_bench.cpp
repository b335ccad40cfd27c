// Times the OpenMP amplitude kernels against their serial reference on a
// seeded random state and verifies both produce identical amplitudes.
//
//   ./kernel_bench [num_qubits] [repeats]

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "chocoq/kernels.hpp"
#include "chocoq/prng.hpp"

namespace {

using chocoq::kernels::cplx;
namespace serial = chocoq::kernels::serial;
namespace omp = chocoq::kernels::omp;

std::vector<cplx> random_state(int n, uint64_t seed) {
    chocoq::SplitMix64 rng(seed);
    std::vector<cplx> amps(1ULL << n);
    double norm = 0;
    for (auto& a : amps) {
        a = cplx(rng.next_in(-1, 1), rng.next_in(-1, 1));
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : amps) a /= norm;
    return amps;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

template <typename F>
double time_ms(int repeats, const F& f) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() /
           repeats;
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 20;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
    const size_t dim = 1ULL << n;
    const cplx hadamard[4] = {M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2};

    std::printf("kernel benchmark: %d qubits (%zu amplitudes), %d repeats\n", n, dim, repeats);
    std::printf("%-22s %12s %12s %9s %12s\n", "kernel", "serial ms", "openmp ms", "speedup", "max |diff|");

    const std::vector<cplx> base = random_state(n, 42);
    std::vector<cplx> s = base, p = base;
    std::vector<double> diag(dim);
    for (size_t i = 0; i < dim; ++i) diag[i] = static_cast<double>(i % 17) - 8.0;

    struct Case {
        const char* name;
        std::function<void(std::vector<cplx>&)> run_serial;
        std::function<void(std::vector<cplx>&)> run_omp;
    };
    const uint64_t mask = (1ULL << (n / 2)) | 1ULL;
    const std::vector<Case> cases = {
        {"hadamard",
         [&](auto& a) { serial::single_qubit(a.data(), dim, n / 2, hadamard); },
         [&](auto& a) { omp::single_qubit(a.data(), dim, n / 2, hadamard); }},
        {"cx",
         [&](auto& a) { serial::cx(a.data(), dim, n - 1, 0); },
         [&](auto& a) { omp::cx(a.data(), dim, n - 1, 0); }},
        {"multi-control phase",
         [&](auto& a) { serial::mcp(a.data(), dim, mask, 0.37); },
         [&](auto& a) { omp::mcp(a.data(), dim, mask, 0.37); }},
        {"diagonal phase",
         [&](auto& a) { serial::phase_diagonal(a.data(), dim, diag.data(), 0.21); },
         [&](auto& a) { omp::phase_diagonal(a.data(), dim, diag.data(), 0.21); }},
        {"pair rotation",
         [&](auto& a) { serial::pair_rotation(a.data(), dim, mask, mask, 0, 0.59); },
         [&](auto& a) { omp::pair_rotation(a.data(), dim, mask, mask, 0, 0.59); }},
    };

    for (const auto& c : cases) {
        double t_serial = time_ms(repeats, [&] { c.run_serial(s); });
        double t_omp = time_ms(repeats, [&] { c.run_omp(p); });
        std::printf("%-22s %12.3f %12.3f %8.2fx %12.3g\n", c.name, t_serial, t_omp,
                    t_serial / t_omp, max_diff(s, p));
    }

    double e_serial = 0, e_omp = 0;
    double t_serial = time_ms(repeats, [&] { e_serial = serial::expectation_diagonal(s.data(), dim, diag.data()); });
    double t_omp = time_ms(repeats, [&] { e_omp = omp::expectation_diagonal(p.data(), dim, diag.data()); });
    std::printf("%-22s %12.3f %12.3f %8.2fx %12.3g\n", "expectation", t_serial, t_omp,
                t_serial / t_omp, std::abs(e_serial - e_omp));
    return 0;
}

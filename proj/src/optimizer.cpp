#include "chocoq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chocoq/prng.hpp"

namespace chocoq {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

double diameter(const std::vector<Vertex>& simplex) {
    double d = 0;
    const auto& best = simplex.front().x;
    for (size_t v = 1; v < simplex.size(); ++v) {
        double dist = 0;
        for (size_t i = 0; i < best.size(); ++i) {
            double diff = simplex[v].x[i] - best[i];
            dist += diff * diff;
        }
        d = std::max(d, std::sqrt(dist));
    }
    return d;
}

} // namespace

OptTrace optimize(const std::function<double(const std::vector<double>&)>& objective_fn, int dim,
                  const OptimizerConfig& cfg) {
    if (dim < 2 || dim % 2 != 0)
        throw std::invalid_argument("parameter dimension must be even and >= 2");
    if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(cfg.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");

    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

    OptTrace trace;
    trace.best_value = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < std::max(1, cfg.restarts); ++restart) {
        std::vector<double> start(static_cast<size_t>(dim), cfg.initial_value);
        if (restart > 0) {
            SplitMix64 rng(derive_seed(cfg.seed, "optimizer-restart-" + std::to_string(restart)));
            for (auto& x : start) x = rng.next_in(cfg.restart_lo, cfg.restart_hi);
        }

        int budget = cfg.max_iters;
        bool aborted = false;
        auto eval = [&](const std::vector<double>& x) {
            double f = objective_fn(x);
            trace.entries.push_back({trace.evaluations, x, f});
            ++trace.evaluations;
            if (!std::isfinite(f)) {
                trace.diagnostics.push_back("restart " + std::to_string(restart) +
                                            ": non-finite objective value, aborted");
                aborted = true;
                return f;
            }
            if (f < trace.best_value) {
                trace.best_value = f;
                trace.best_theta = x;
            }
            return f;
        };

        std::vector<Vertex> simplex;
        simplex.push_back({start, eval(start)});
        for (int i = 0; i < dim && !aborted; ++i) {
            std::vector<double> x = start;
            x[static_cast<size_t>(i)] += cfg.initial_step;
            simplex.push_back({x, eval(x)});
        }
        if (aborted) continue;

        auto order = [&]() {
            std::stable_sort(simplex.begin(), simplex.end(),
                             [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        };
        order();

        while (budget > 0 && !aborted && diameter(simplex) >= cfg.tolerance) {
            const size_t worst = simplex.size() - 1;
            std::vector<double> centroid(static_cast<size_t>(dim), 0.0);
            for (size_t v = 0; v < worst; ++v)
                for (int i = 0; i < dim; ++i)
                    centroid[static_cast<size_t>(i)] += simplex[v].x[static_cast<size_t>(i)];
            for (auto& c : centroid) c /= static_cast<double>(worst);

            auto blend = [&](double coeff) {
                std::vector<double> x(static_cast<size_t>(dim));
                for (int i = 0; i < dim; ++i)
                    x[static_cast<size_t>(i)] = centroid[static_cast<size_t>(i)] +
                                                coeff * (centroid[static_cast<size_t>(i)] -
                                                         simplex[worst].x[static_cast<size_t>(i)]);
                return x;
            };

            --budget;
            std::vector<double> xr = blend(kReflect);
            double fr = eval(xr);
            if (aborted) break;

            if (fr < simplex[0].f) {
                if (budget > 0) {
                    --budget;
                    std::vector<double> xe = blend(kExpand);
                    double fe = eval(xe);
                    if (aborted) break;
                    simplex[worst] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
                } else {
                    simplex[worst] = {xr, fr};
                }
            } else if (fr < simplex[worst - 1].f) {
                simplex[worst] = {xr, fr};
            } else {
                bool outside = fr < simplex[worst].f;
                std::vector<double> xc(static_cast<size_t>(dim));
                const auto& anchor = outside ? xr : simplex[worst].x;
                for (int i = 0; i < dim; ++i)
                    xc[static_cast<size_t>(i)] = centroid[static_cast<size_t>(i)] +
                                                 kContract * (anchor[static_cast<size_t>(i)] -
                                                              centroid[static_cast<size_t>(i)]);
                if (budget <= 0) break;
                --budget;
                double fc = eval(xc);
                if (aborted) break;
                if (fc < (outside ? fr : simplex[worst].f)) {
                    simplex[worst] = {xc, fc};
                } else {
                    // Shrink toward the best vertex.
                    for (size_t v = 1; v < simplex.size() && !aborted && budget > 0; ++v) {
                        for (int i = 0; i < dim; ++i)
                            simplex[v].x[static_cast<size_t>(i)] =
                                simplex[0].x[static_cast<size_t>(i)] +
                                kShrink * (simplex[v].x[static_cast<size_t>(i)] -
                                           simplex[0].x[static_cast<size_t>(i)]);
                        --budget;
                        simplex[v].f = eval(simplex[v].x);
                    }
                }
            }
            order();
        }
    }

    if (!std::isfinite(trace.best_value) && trace.best_theta.empty())
        throw std::runtime_error("optimizer found no finite objective value");
    return trace;
}

} // namespace chocoq

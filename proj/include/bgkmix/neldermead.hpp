#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace bgkmix {

// Small deterministic PRNG (splitmix64) so seeded runs reproduce bitwise
// across platforms, unlike the standard library distributions.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, 1)
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    // uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

struct SimplexResult {
    std::vector<double> best;
    double fbest = 0.0;
    int evals = 0;
};

struct SimplexOptions {
    int max_evals = 200;    // additional evaluations after the starting point
    double spread_tol = 1e-10;
    double initial_step = 0.15;
    uint64_t seed = 0;      // jitters the initial simplex
};

// Derivative-free simplex minimization (reflection/expansion/contraction/
// shrink). The starting point is always evaluated; the best point ever
// evaluated is returned, so enlarging the budget never worsens the result.
inline SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                                      const std::vector<double>& x0, const SimplexOptions& opt = {}) {
    const int n = static_cast<int>(x0.size());
    SimplexResult res;
    res.best = x0;
    res.fbest = f(x0);
    res.evals = 1;

    if (opt.max_evals <= 0 || n == 0) return res;

    SplitMix64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 1);
    auto track = [&res](const std::vector<double>& x, double fx) {
        if (fx < res.fbest) {
            res.fbest = fx;
            res.best = x;
        }
    };

    std::vector<std::vector<double>> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    fs[0] = res.fbest;
    for (int i = 0; i < n; ++i) {
        const double step = opt.initial_step * std::max(std::abs(x0[i]), 0.1) *
                            (1.0 + 0.05 * (rng.uniform() - 0.5));
        xs[i + 1][i] += step;
        fs[i + 1] = f(xs[i + 1]);
        track(xs[i + 1], fs[i + 1]);
        if (++res.evals >= opt.max_evals + 1) return res;
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<int> order(n + 1);
    while (res.evals < opt.max_evals + 1) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        {
            std::vector<std::vector<double>> xs2(n + 1);
            std::vector<double> fs2(n + 1);
            for (int i = 0; i <= n; ++i) {
                xs2[i] = xs[order[i]];
                fs2[i] = fs[order[i]];
            }
            xs.swap(xs2);
            fs.swap(fs2);
        }
        if (std::abs(fs[n] - fs[0]) <= opt.spread_tol * (1.0 + std::abs(fs[0]))) break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[j] += xs[i][j] / n;

        auto along = [&](double c) {
            std::vector<double> x(n);
            for (int j = 0; j < n; ++j) x[j] = centroid[j] + c * (centroid[j] - xs[n][j]);
            return x;
        };

        const std::vector<double> xr = along(alpha);
        const double fr = f(xr);
        track(xr, fr);
        if (++res.evals >= opt.max_evals + 1) break;

        if (fr < fs[0]) {
            const std::vector<double> xe = along(gamma);
            const double fe = f(xe);
            track(xe, fe);
            ++res.evals;
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const std::vector<double> xc = along(fr < fs[n] ? rho : -rho);
            const double fc = f(xc);
            track(xc, fc);
            ++res.evals;
            if (fc < std::min(fr, fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n && res.evals < opt.max_evals + 1; ++i) {
                    for (int j = 0; j < n; ++j) xs[i][j] = xs[0][j] + sigma * (xs[i][j] - xs[0][j]);
                    fs[i] = f(xs[i]);
                    track(xs[i], fs[i]);
                    ++res.evals;
                }
            }
        }
    }
    return res;
}

} // namespace bgkmix

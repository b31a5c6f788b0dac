#pragma once

#include "bgkmix/neldermead.hpp"
#include "bgkmix/params.hpp"

namespace bgkmix::testing {

// Symmetric unit-relaxation parameters; every rate is hand-computable here.
inline MixtureParams symmetric_params() {
    MixtureParams p;
    p.m1 = p.m2 = 1.0;
    p.nu11 = p.nu12 = p.nu21 = p.nu22 = 0.5;
    p.epsilon = 1.0;
    p.delta = 0.5;
    p.alpha = 0.5;
    p.gamma = 0.0;
    p.n_inf_1 = p.n_inf_2 = 1.0;
    p.L = 2.0 * M_PI;
    return p;
}

inline MixtureParams asymmetric_params() {
    MixtureParams p;
    p.m1 = 1.0;
    p.m2 = 3.0;
    p.epsilon = 1.0 / 3.0;
    p.nu21 = 0.6;
    p.nu12 = p.epsilon * p.nu21;
    p.nu11 = 0.4;
    p.nu22 = 0.7;
    p.delta = 0.4;
    p.alpha = 0.6;
    p.gamma = 0.05;
    p.n_inf_1 = 1.2;
    p.n_inf_2 = 0.8;
    p.L = 5.0;
    return p;
}

// Mass ratio 2: a shared Gauss-Hermite grid of ~300 nodes still resolves
// both thermal widths, which keeps oracle tests fast.
inline MixtureParams mild_asymmetric_params() {
    MixtureParams p = asymmetric_params();
    p.m2 = 2.0;
    p.epsilon = 0.5;
    p.nu12 = p.epsilon * p.nu21;
    return p;
}

// Random draw from the admissible region (general frequencies).
inline MixtureParams random_admissible(SplitMix64& rng) {
    MixtureParams p;
    p.m1 = rng.uniform(0.5, 3.0);
    p.m2 = rng.uniform(0.5, 3.0);
    p.epsilon = rng.uniform(0.2, 1.0);
    p.n_inf_1 = rng.uniform(0.5, 2.0);
    p.n_inf_2 = rng.uniform(0.5, 2.0);
    p.alpha = rng.uniform(0.0, 1.0);
    const double dmin = p.delta_min();
    p.delta = dmin + rng.uniform(0.0, 1.0) * (1.0 - dmin);
    p.gamma = rng.uniform(0.0, 1.0) * p.gamma_max();
    p.nu21 = rng.uniform(0.0, 2.0);
    p.nu12 = p.epsilon * p.nu21;
    p.nu11 = rng.uniform(0.0, 2.0);
    p.nu22 = rng.uniform(0.0, 2.0);
    p.L = rng.uniform(1.0, 10.0);
    return p;
}

// Random admissible draw satisfying the unit relaxation-rate normalization,
// with (delta, alpha) kept away from the degenerate endpoints so the k = 0
// rate stays positive.
inline MixtureParams random_rate_normalized(SplitMix64& rng, bool interior = true) {
    MixtureParams p = random_admissible(rng);
    if (interior) {
        p.alpha = rng.uniform(0.05, 0.9);
        const double dmin = p.delta_min();
        p.delta = dmin + rng.uniform(0.1, 0.9) * (1.0 - dmin);
        p.gamma = rng.uniform(0.0, 0.9) * p.gamma_max();
    }
    const double hi = std::min(1.0 / (p.epsilon * p.n_inf_2), 1.0 / p.n_inf_1);
    p.nu21 = rng.uniform(0.2, 0.95) * hi;
    p.nu12 = p.epsilon * p.nu21;
    p.nu11 = (1.0 - p.nu12 * p.n_inf_2) / p.n_inf_1;
    p.nu22 = (1.0 - p.nu21 * p.n_inf_1) / p.n_inf_2;
    return p;
}

} // namespace bgkmix::testing

#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "bgkmix/errors.hpp"
#include "bgkmix/params.hpp"

namespace bgkmix {

// Probabilists' Hermite polynomials normalized by sqrt(m!), evaluated by the
// stable three-term recurrence:
//   p_0 = 1, p_1 = x, p_{m+1} = (x p_m - sqrt(m) p_{m-1}) / sqrt(m+1).
// These are orthonormal against the standard Gaussian weight.
inline Eigen::VectorXd hermite_normalized_all(int max_order, double x) {
    Eigen::VectorXd p(max_order + 1);
    p[0] = 1.0;
    if (max_order >= 1) p[1] = x;
    for (int m = 1; m < max_order; ++m)
        p[m + 1] = (x * p[m] - std::sqrt(static_cast<double>(m)) * p[m - 1]) / std::sqrt(m + 1.0);
    return p;
}

inline double hermite_normalized(int order, double x) {
    if (order < 0) throw OrderOutOfRangeError("hermite_normalized: negative order");
    return hermite_normalized_all(order, x)[order];
}

// Orthonormal velocity basis of one species,
//   g_m(v) = p_m(sqrt(mass) v) * f_inf(v) / n_inf,
// orthonormal in L^2 with weight (f_inf/n_inf)^{-1}. Orders 0..2 carry the
// density, momentum and energy perturbations.
struct HermiteBasis {
    int species = 1;
    double mass = 1.0;
    double n_inf = 1.0;
    int max_order = 0;

    static HermiteBasis make(const ValidatedParams& vp, int species, int max_order) {
        const MixtureParams& p = vp.p();
        HermiteBasis b;
        b.species = species;
        b.mass = species == 1 ? p.m1 : p.m2;
        b.n_inf = species == 1 ? p.n_inf_1 : p.n_inf_2;
        b.max_order = max_order;
        return b;
    }

    // f_inf(v)/n_inf, the unit-mass-normalized equilibrium shape.
    double equilibrium_shape(double v) const {
        return std::sqrt(mass / (2.0 * M_PI)) * std::exp(-0.5 * mass * v * v);
    }

    double eval(int order, double v) const {
        if (order < 0 || order > max_order)
            throw OrderOutOfRangeError("HermiteBasis::eval: order outside [0, max_order]");
        return hermite_normalized(order, std::sqrt(mass) * v) * equilibrium_shape(v);
    }

    // All orders at once; cheaper when projecting.
    Eigen::VectorXd eval_all(double v) const {
        return hermite_normalized_all(max_order, std::sqrt(mass) * v) * equilibrium_shape(v);
    }
};

inline double basis_eval(const HermiteBasis& b, int order, double v) { return b.eval(order, v); }

} // namespace bgkmix

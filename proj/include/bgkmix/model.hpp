#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "bgkmix/grid.hpp"
#include "bgkmix/params.hpp"

namespace bgkmix {

// 1D Maxwellian: n * (m/(2 pi T))^{1/2} * exp(-m (v-u)^2 / (2T)).
inline double maxwellian(double n, double u, double T, double m, double v) {
    if (!(n > 0.0)) throw NonPositiveError("maxwellian: n must be positive");
    if (!(T > 0.0)) throw NonPositiveError("maxwellian: T must be positive");
    if (!(m > 0.0)) throw NonPositiveError("maxwellian: m must be positive");
    const double dv = v - u;
    return n * std::sqrt(m / (2.0 * M_PI * T)) * std::exp(-0.5 * m * dv * dv / T);
}

// Space-homogeneous steady state of species s (u=0, T=1 after rescaling).
inline double equilibrium(const ValidatedParams& vp, int species, double v) {
    const MixtureParams& p = vp.p();
    const double n = species == 1 ? p.n_inf_1 : p.n_inf_2;
    const double m = species == 1 ? p.m1 : p.m2;
    return maxwellian(n, 0.0, 1.0, m, v);
}

// Cross-species mean velocities:
//   u12 = delta*u1 + (1-delta)*u2,
//   u21 = u2 - (m1/m2)*eps*(1-delta)*(u2-u1)
// (the second is forced by conservation of total momentum).
inline std::pair<double, double> mixture_velocities(const ValidatedParams& vp, double u1, double u2) {
    const MixtureParams& p = vp.p();
    const double u12 = p.delta * u1 + (1.0 - p.delta) * u2;
    const double u21 = u2 - (p.m1 / p.m2) * p.epsilon * (1.0 - p.delta) * (u2 - u1);
    return {u12, u21};
}

// Cross-species temperatures (d = 1):
//   T12 = alpha*T1 + (1-alpha)*T2 + gamma*(u1-u2)^2,
//   T21 = [eps*m1*(1-delta)*((m1/m2)*eps*(delta-1)+delta+1) - eps*gamma]*(u1-u2)^2
//         + eps*(1-alpha)*T1 + (1-eps*(1-alpha))*T2
// (the second is forced by conservation of total energy). Both are strictly
// positive on the admissible (delta, gamma) region.
inline std::pair<double, double> mixture_temperatures(const ValidatedParams& vp, double u1, double u2,
                                                      double T1, double T2) {
    if (!(T1 > 0.0) || !(T2 > 0.0))
        throw NonPositiveError("mixture_temperatures: T1, T2 must be positive");
    const MixtureParams& p = vp.p();
    const double du2 = (u1 - u2) * (u1 - u2);
    const double T12 = p.alpha * T1 + (1.0 - p.alpha) * T2 + p.gamma * du2;
    const double coef = p.epsilon * p.m1 * (1.0 - p.delta) *
                            ((p.m1 / p.m2) * p.epsilon * (p.delta - 1.0) + p.delta + 1.0) -
                        p.epsilon * p.gamma;
    const double T21 = coef * du2 + p.epsilon * (1.0 - p.alpha) * T1 +
                       (1.0 - p.epsilon * (1.0 - p.alpha)) * T2;
    return {T12, T21};
}

// Collision right-hand side of the nonlinear two-species BGK system,
// evaluated pointwise on a velocity grid:
//   Q1 = nu11 n1 (M1 - f1) + nu12 n2 (M12 - f1),
//   Q2 = nu22 n2 (M2 - f2) + nu21 n1 (M21 - f2).
inline std::pair<std::vector<double>, std::vector<double>>
nonlinear_rhs(const ValidatedParams& vp, const VelocityGrid& g, const std::vector<double>& f1,
              const std::vector<double>& f2) {
    const MixtureParams& p = vp.p();
    const MacroState s1 = moments(g, f1, p.m1);
    const MacroState s2 = moments(g, f2, p.m2);
    const auto [u12, u21] = mixture_velocities(vp, s1.u, s2.u);
    const auto [T12, T21] = mixture_temperatures(vp, s1.u, s2.u, s1.T, s2.T);

    std::vector<double> q1(g.size()), q2(g.size());
    for (int j = 0; j < g.size(); ++j) {
        const double v = g.nodes[j];
        const double M1 = maxwellian(s1.n, s1.u, s1.T, p.m1, v);
        const double M2 = maxwellian(s2.n, s2.u, s2.T, p.m2, v);
        const double M12 = maxwellian(s1.n, u12, T12, p.m1, v);
        const double M21 = maxwellian(s2.n, u21, T21, p.m2, v);
        q1[j] = p.nu11 * s1.n * (M1 - f1[j]) + p.nu12 * s2.n * (M12 - f1[j]);
        q2[j] = p.nu22 * s2.n * (M2 - f2[j]) + p.nu21 * s1.n * (M21 - f2[j]);
    }
    return {std::move(q1), std::move(q2)};
}

} // namespace bgkmix

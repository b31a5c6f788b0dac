#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "bgkmix/grid.hpp"
#include "bgkmix/params.hpp"

namespace bgkmix {

using Complex = std::complex<double>;

// Moments of a perturbation h around equilibrium:
//   sigma = integral h, mu = integral v h, tau = m integral v^2 h.
// Complex entries serve per-Fourier-mode data; physical k=0 data are real.
struct PerturbationMoments {
    Complex sigma{0.0, 0.0};
    Complex mu{0.0, 0.0};
    Complex tau{0.0, 0.0};
};

inline PerturbationMoments perturbation_moments(const VelocityGrid& g, const Eigen::VectorXcd& h,
                                                double mass) {
    PerturbationMoments pm;
    for (int j = 0; j < g.size(); ++j) {
        const double v = g.nodes[j];
        const Complex wh = g.weights[j] * h[j];
        pm.sigma += wh;
        pm.mu += v * wh;
        pm.tau += mass * v * v * wh;
    }
    return pm;
}

// Partial derivatives of a cross-species Maxwellian with respect to the six
// moment perturbations (sigma1, sigma2, mu1, mu2, tau1, tau2), evaluated at
// equilibrium. Each entry is a closed-form coefficient polynomial in v times
// the equilibrium of the species being relaxed.
struct DerivativeTable {
    std::array<std::function<double(double)>, 6> d; // order: sigma1, sigma2, mu1, mu2, tau1, tau2

    double d_sigma1(double v) const { return d[0](v); }
    double d_sigma2(double v) const { return d[1](v); }
    double d_mu1(double v) const { return d[2](v); }
    double d_mu2(double v) const { return d[3](v); }
    double d_tau1(double v) const { return d[4](v); }
    double d_tau2(double v) const { return d[5](v); }
};

namespace detail {
inline double equilibrium_value(double n_inf, double m, double v) {
    return n_inf * std::sqrt(m / (2.0 * M_PI)) * std::exp(-0.5 * m * v * v);
}
} // namespace detail

// Derivative table of the species-1 relaxation target M12 (d = 1).
inline DerivativeTable m12_derivative_table(const ValidatedParams& vp) {
    const MixtureParams p = vp.p();
    const double n1 = p.n_inf_1, n2 = p.n_inf_2, m1 = p.m1, a = p.alpha, dl = p.delta;
    DerivativeTable t;
    t.d[0] = [=](double v) {
        return (1.0 / n1) * (1.0 + 0.5 * a * (1.0 - m1 * v * v)) * detail::equilibrium_value(n1, m1, v);
    };
    t.d[1] = [=](double v) {
        return (0.5 / n2) * (1.0 - a) * (1.0 - m1 * v * v) * detail::equilibrium_value(n1, m1, v);
    };
    t.d[2] = [=](double v) { return (dl / n1) * m1 * v * detail::equilibrium_value(n1, m1, v); };
    t.d[3] = [=](double v) { return ((1.0 - dl) / n2) * m1 * v * detail::equilibrium_value(n1, m1, v); };
    t.d[4] = [=](double v) {
        return (0.5 * a / n1) * (m1 * v * v - 1.0) * detail::equilibrium_value(n1, m1, v);
    };
    t.d[5] = [=](double v) {
        return (0.5 * (1.0 - a) / n2) * (m1 * v * v - 1.0) * detail::equilibrium_value(n1, m1, v);
    };
    return t;
}

// Derivative table of the species-2 relaxation target M21 (d = 1).
inline DerivativeTable m21_derivative_table(const ValidatedParams& vp) {
    const MixtureParams p = vp.p();
    const double n1 = p.n_inf_1, n2 = p.n_inf_2, m1 = p.m1, m2 = p.m2;
    const double e = p.epsilon, a = p.alpha, dl = p.delta;
    DerivativeTable t;
    t.d[0] = [=](double v) {
        return (0.5 * e * (1.0 - a) / n1) * (1.0 - m2 * v * v) * detail::equilibrium_value(n2, m2, v);
    };
    t.d[1] = [=](double v) {
        return (1.0 / n2) * (1.0 + 0.5 * (1.0 - e * (1.0 - a)) * (1.0 - m2 * v * v)) *
               detail::equilibrium_value(n2, m2, v);
    };
    t.d[2] = [=](double v) {
        return (e * (1.0 - dl) / n1) * m1 * v * detail::equilibrium_value(n2, m2, v);
    };
    t.d[3] = [=](double v) {
        return ((1.0 - (m1 / m2) * e * (1.0 - dl)) / n2) * m2 * v * detail::equilibrium_value(n2, m2, v);
    };
    t.d[4] = [=](double v) {
        return (0.5 * e * (1.0 - a) / n1) * (m2 * v * v - 1.0) * detail::equilibrium_value(n2, m2, v);
    };
    t.d[5] = [=](double v) {
        return (0.5 * (1.0 - e * (1.0 - a)) / n2) * (m2 * v * v - 1.0) * detail::equilibrium_value(n2, m2, v);
    };
    return t;
}

// Exact parametric cross Maxwellians as functions of the six moment
// perturbations. These are the unexpanded forms the derivative tables are a
// Taylor expansion of; the finite-difference check differentiates them.
inline double cross_maxwellian_12(const ValidatedParams& vp, double s1, double s2, double mu1,
                                  double mu2, double tau1, double tau2, double v) {
    const MixtureParams p = vp.p();
    const double n1 = p.n_inf_1 + s1, n2 = p.n_inf_2 + s2;
    const double P1 = p.n_inf_1 + tau1 - p.m1 * mu1 * mu1 / n1;
    const double P2 = p.n_inf_2 + tau2 - p.m2 * mu2 * mu2 / n2;
    const double mu12 = p.delta * mu1 + (1.0 - p.delta) * (n1 / n2) * mu2;
    const double dmu = mu1 - (n1 / n2) * mu2;
    const double P12 = p.alpha * P1 + (1.0 - p.alpha) * (n1 / n2) * P2 + p.gamma * dmu * dmu / n1;
    const double z = v * n1 - mu12;
    return std::pow(n1, 1.5) * std::sqrt(p.m1 / (2.0 * M_PI * P12)) *
           std::exp(-0.5 * p.m1 * z * z / (n1 * P12));
}

inline double cross_maxwellian_21(const ValidatedParams& vp, double s1, double s2, double mu1,
                                  double mu2, double tau1, double tau2, double v) {
    const MixtureParams p = vp.p();
    const double n1 = p.n_inf_1 + s1, n2 = p.n_inf_2 + s2;
    const double P1 = p.n_inf_1 + tau1 - p.m1 * mu1 * mu1 / n1;
    const double P2 = p.n_inf_2 + tau2 - p.m2 * mu2 * mu2 / n2;
    const double dl_t = (p.m1 / p.m2) * p.epsilon * (1.0 - p.delta);
    const double a_t = p.epsilon * (1.0 - p.alpha);
    const double g_t = p.epsilon * p.m1 * (1.0 - p.delta) *
                           ((p.m1 / p.m2) * p.epsilon * (p.delta - 1.0) + p.delta + 1.0) -
                       p.epsilon * p.gamma;
    const double mu21 = dl_t * (n2 / n1) * mu1 + (1.0 - dl_t) * mu2;
    const double dmu = (n2 / n1) * mu1 - mu2;
    const double P21 = a_t * (n2 / n1) * P1 + (1.0 - a_t) * P2 + g_t * dmu * dmu / n2;
    const double z = v * n2 - mu21;
    return std::pow(n2, 1.5) * std::sqrt(p.m2 / (2.0 * M_PI * P21)) *
           std::exp(-0.5 * p.m2 * z * z / (n2 * P21));
}

// Max relative error of a supplied derivative table against central finite
// differences of the exact parametric Maxwellians, probed on a velocity range
// covering both equilibria. Factored out so corrupted tables can be checked.
inline double fd_table_error(const ValidatedParams& vp, double step, const DerivativeTable& t12,
                             const DerivativeTable& t21) {
    const MixtureParams p = vp.p();
    auto probe = [&](auto&& exact, const DerivativeTable& tab, double mass) {
        const int nv = 25;
        const double vmax = 6.0 / std::sqrt(mass);
        double worst = 0.0;
        for (int arg = 0; arg < 6; ++arg) {
            double scale = 1.0, diffmax = 0.0, tabmax = 0.0;
            for (int j = 0; j < nv; ++j) {
                const double v = -vmax + 2.0 * vmax * j / (nv - 1);
                double xp[6] = {0, 0, 0, 0, 0, 0};
                xp[arg] = step;
                const double fp = exact(xp[0], xp[1], xp[2], xp[3], xp[4], xp[5], v);
                xp[arg] = -step;
                const double fm = exact(xp[0], xp[1], xp[2], xp[3], xp[4], xp[5], v);
                const double fd = (fp - fm) / (2.0 * step);
                const double tv = tab.d[arg](v);
                diffmax = std::max(diffmax, std::abs(fd - tv));
                tabmax = std::max(tabmax, std::abs(tv));
            }
            scale = std::max(tabmax, 1.0);
            worst = std::max(worst, diffmax / scale);
        }
        return worst;
    };
    auto e12 = [&](double a, double b, double c, double d, double e, double f, double v) {
        return cross_maxwellian_12(vp, a, b, c, d, e, f, v);
    };
    auto e21 = [&](double a, double b, double c, double d, double e, double f, double v) {
        return cross_maxwellian_21(vp, a, b, c, d, e, f, v);
    };
    return std::max(probe(e12, t12, p.m1), probe(e21, t21, p.m2));
}

inline double check_derivatives_fd(const ValidatedParams& vp, double step) {
    if (!(step >= 1e-7 && step <= 1e-3))
        throw Error("check_derivatives_fd: step outside [1e-7, 1e-3]");
    return fd_table_error(vp, step, m12_derivative_table(vp), m21_derivative_table(vp));
}

// Collision right-hand side of the linearized system (d = 1), pointwise on a
// shared velocity grid. The transport term is not included; per Fourier mode
// it is the diagonal -i k (2 pi / L) v.
inline std::pair<Eigen::VectorXcd, Eigen::VectorXcd>
linearized_rhs(const ValidatedParams& vp, const VelocityGrid& g, const Eigen::VectorXcd& h1,
               const Eigen::VectorXcd& h2) {
    const MixtureParams p = vp.p();
    const double n1 = p.n_inf_1, n2 = p.n_inf_2, m1 = p.m1, m2 = p.m2;
    const double e = p.epsilon, a = p.alpha, dl = p.delta;

    const PerturbationMoments q1 = perturbation_moments(g, h1, m1);
    const PerturbationMoments q2 = perturbation_moments(g, h2, m2);

    Eigen::VectorXcd r1(g.size()), r2(g.size());
    for (int j = 0; j < g.size(); ++j) {
        const double v = g.nodes[j];
        const double f1 = detail::equilibrium_value(n1, m1, v);
        const double f2 = detail::equilibrium_value(n2, m2, v);
        const double w1 = m1 * v * v, w2 = m2 * v * v;

        const Complex own1 = (1.5 / n1 - 0.5 * w1 / n1) * q1.sigma + (m1 / n1) * v * q1.mu +
                             (1.0 / n1) * (-0.5 + 0.5 * w1) * q1.tau;
        const Complex cross1 = (1.0 / n1) * (1.0 + 0.5 * a * (1.0 - w1)) * q1.sigma +
                               (0.5 / n2) * (1.0 - a) * (1.0 - w1) * q2.sigma +
                               (dl / n1) * m1 * v * q1.mu + ((1.0 - dl) / n2) * m1 * v * q2.mu +
                               (0.5 * a / n1) * (w1 - 1.0) * q1.tau +
                               (0.5 * (1.0 - a) / n2) * (w1 - 1.0) * q2.tau;
        r1[j] = p.nu11 * n1 * (f1 * own1 - h1[j]) + p.nu12 * n2 * (f1 * cross1 - h1[j]);

        const Complex own2 = (1.5 / n2 - 0.5 * w2 / n2) * q2.sigma + (m2 / n2) * v * q2.mu +
                             (1.0 / n2) * (-0.5 + 0.5 * w2) * q2.tau;
        const Complex cross2 = (0.5 * e * (1.0 - a) / n1) * (1.0 - w2) * q1.sigma +
                               (1.0 / n2) * (1.0 + 0.5 * (1.0 - e * (1.0 - a)) * (1.0 - w2)) * q2.sigma +
                               (e * (1.0 - dl) / n1) * m1 * v * q1.mu +
                               ((1.0 - (m1 / m2) * e * (1.0 - dl)) / n2) * m2 * v * q2.mu +
                               (0.5 * e * (1.0 - a) / n1) * (w2 - 1.0) * q1.tau +
                               (0.5 * (1.0 - e * (1.0 - a)) / n2) * (w2 - 1.0) * q2.tau;
        r2[j] = p.nu22 * n2 * (f2 * own2 - h2[j]) + p.nu21 * n1 * (f2 * cross2 - h2[j]);
    }
    return {std::move(r1), std::move(r2)};
}

} // namespace bgkmix

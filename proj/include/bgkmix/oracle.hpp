#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "bgkmix/grid.hpp"
#include "bgkmix/hermite.hpp"
#include "bgkmix/linearize.hpp"
#include "bgkmix/params.hpp"
#include "bgkmix/spectral.hpp"

namespace bgkmix {
namespace oracle {

// Brute-force collocation of the linearized per-mode system on a shared
// velocity grid: B acts on stacked samples (h1(v_j); h2(v_j)). Transport is
// the diagonal -i k (2 pi / L) v_j; the collision part is a relaxation
// diagonal plus twelve rank-one moment couplings (six moment functionals
// feeding six velocity profiles per species).
struct GridGenerator {
    int k = 0;
    VelocityGrid grid;
    Eigen::MatrixXcd B;
    double relax_1 = 0.0; // nu11 n1 + nu12 n2, the species-1 relaxation rate
    double relax_2 = 0.0; // nu22 n2 + nu21 n1
};

inline void require_resolved(const VelocityGrid& g, double mass, int min_points = 8) {
    const double width = 1.0 / std::sqrt(mass);
    int inside = 0;
    for (double v : g.nodes)
        if (std::abs(v) <= width) ++inside;
    if (inside < min_points)
        throw GridTooCoarseError("oracle: fewer than 8 grid points per thermal width");
}

inline GridGenerator collocation_generator(const ValidatedParams& vp, int k, const VelocityGrid& grid) {
    const MixtureParams p = vp.p();
    require_resolved(grid, p.m1);
    require_resolved(grid, p.m2);

    const int n = grid.size();
    const double n1 = p.n_inf_1, n2 = p.n_inf_2, m1 = p.m1, m2 = p.m2;
    const double e = p.epsilon, a = p.alpha, dl = p.delta;
    const double c11 = p.nu11 * n1, c12 = p.nu12 * n2, c22 = p.nu22 * n2, c21 = p.nu21 * n1;

    // moment rows (quadrature functionals)
    Eigen::RowVectorXd r_sigma(n), r_mu(n), r_tau1(n), r_tau2(n);
    for (int j = 0; j < n; ++j) {
        const double v = grid.nodes[j], w = grid.weights[j];
        r_sigma[j] = w;
        r_mu[j] = w * v;
        r_tau1[j] = m1 * w * v * v;
        r_tau2[j] = m2 * w * v * v;
    }

    // profile columns
    Eigen::VectorXd a_s1(n), a_s2(n), a_m1(n), a_m2(n), a_t1(n), a_t2(n);
    Eigen::VectorXd b_s1(n), b_s2(n), b_m1(n), b_m2(n), b_t1(n), b_t2(n);
    for (int j = 0; j < n; ++j) {
        const double v = grid.nodes[j];
        const double f1 = detail::equilibrium_value(n1, m1, v);
        const double f2 = detail::equilibrium_value(n2, m2, v);
        const double w1 = m1 * v * v, w2 = m2 * v * v;

        a_s1[j] = c11 * f1 * (1.5 - 0.5 * w1) / n1 + c12 * f1 * (1.0 + 0.5 * a * (1.0 - w1)) / n1;
        a_s2[j] = c12 * f1 * (0.5 / n2) * (1.0 - a) * (1.0 - w1);
        a_m1[j] = c11 * f1 * (m1 / n1) * v + c12 * f1 * (dl / n1) * m1 * v;
        a_m2[j] = c12 * f1 * ((1.0 - dl) / n2) * m1 * v;
        a_t1[j] = c11 * f1 * (-0.5 + 0.5 * w1) / n1 + c12 * f1 * (0.5 * a / n1) * (w1 - 1.0);
        a_t2[j] = c12 * f1 * (0.5 * (1.0 - a) / n2) * (w1 - 1.0);

        b_s1[j] = c21 * f2 * (0.5 * e * (1.0 - a) / n1) * (1.0 - w2);
        b_s2[j] = c22 * f2 * (1.5 - 0.5 * w2) / n2 +
                  c21 * f2 * (1.0 + 0.5 * (1.0 - e * (1.0 - a)) * (1.0 - w2)) / n2;
        b_m1[j] = c21 * f2 * (e * (1.0 - dl) / n1) * m1 * v;
        b_m2[j] = c22 * f2 * (m2 / n2) * v +
                  c21 * f2 * ((1.0 - (m1 / m2) * e * (1.0 - dl)) / n2) * m2 * v;
        b_t1[j] = c21 * f2 * (0.5 * e * (1.0 - a) / n1) * (w2 - 1.0);
        b_t2[j] = c22 * f2 * (-0.5 + 0.5 * w2) / n2 +
                  c21 * f2 * (0.5 * (1.0 - e * (1.0 - a)) / n2) * (w2 - 1.0);
    }

    Eigen::MatrixXd B11 = a_s1 * r_sigma + a_m1 * r_mu + a_t1 * r_tau1;
    Eigen::MatrixXd B12 = a_s2 * r_sigma + a_m2 * r_mu + a_t2 * r_tau2;
    Eigen::MatrixXd B21 = b_s1 * r_sigma + b_m1 * r_mu + b_t1 * r_tau1;
    Eigen::MatrixXd B22 = b_s2 * r_sigma + b_m2 * r_mu + b_t2 * r_tau2;
    B11.diagonal().array() -= c11 + c12;
    B22.diagonal().array() -= c22 + c21;

    GridGenerator g;
    g.k = k;
    g.grid = grid;
    g.relax_1 = c11 + c12;
    g.relax_2 = c22 + c21;
    g.B = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    g.B.topLeftCorner(n, n) = B11.cast<Complex>();
    g.B.topRightCorner(n, n) = B12.cast<Complex>();
    g.B.bottomLeftCorner(n, n) = B21.cast<Complex>();
    g.B.bottomRightCorner(n, n) = B22.cast<Complex>();
    const Complex ikc(0.0, k * 2.0 * M_PI / p.L);
    for (int j = 0; j < n; ++j) {
        g.B(j, j) -= ikc * grid.nodes[j];
        g.B(n + j, n + j) -= ikc * grid.nodes[j];
    }
    return g;
}

inline Eigen::VectorXcd evolve(const GridGenerator& g, const Eigen::VectorXcd& stacked, double t) {
    if (t < 0.0) throw Error("oracle::evolve: negative time");
    if (t == 0.0) return stacked;
    return (g.B * t).exp() * stacked;
}

// Quadrature-weighted L2 norm against (f_inf/n_inf)^{-1}; the exponential
// reweighting is folded into the samples to stay inside double range at the
// outermost Gauss-Hermite nodes.
inline double weighted_norm_sq(const VelocityGrid& g, const Eigen::VectorXcd& h, double mass) {
    const double pref = std::sqrt(2.0 * M_PI / mass);
    double acc = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double ah = std::abs(h[j]);
        if (ah == 0.0) continue;
        const double lw = 0.25 * mass * g.nodes[j] * g.nodes[j];
        const double z = lw < 600.0 ? ah * std::exp(lw) : std::exp(std::log(ah) + lw);
        acc += g.weights[j] * pref * z * z;
    }
    return acc;
}

struct CompareReport {
    int k = 0;
    double t = 0.0;
    double l2_rel = 0.0;     // weighted L2 discrepancy of the reconstructions
    double moment_rel = 0.0; // discrepancy of the six (sigma, mu, tau) moments
};

// Evolves one Fourier mode of a spectral field through both paths and
// measures how far the Hermite-truncated answer drifts from the grid answer.
inline CompareReport compare(const SpectralField& field, int k, double t, const VelocityGrid& grid,
                             TransportConvention conv = TransportConvention::MassScaled) {
    const ValidatedParams& vp = field.params;
    const MixtureParams& p = vp.p();
    const int M = field.max_order;
    const int n = grid.size();
    const HermiteBasis b1 = HermiteBasis::make(vp, 1, M);
    const HermiteBasis b2 = HermiteBasis::make(vp, 2, M);

    auto mode_on_grid = [&](const ModeState& ms) {
        Eigen::VectorXcd y(2 * n);
        for (int j = 0; j < n; ++j) {
            const Eigen::VectorXd g1 = b1.eval_all(grid.nodes[j]);
            const Eigen::VectorXd g2 = b2.eval_all(grid.nodes[j]);
            Complex s1(0.0, 0.0), s2(0.0, 0.0);
            for (int m = 0; m <= M; ++m) {
                s1 += ms.h1[m] * g1[m];
                s2 += ms.h2[m] * g2[m];
            }
            y[j] = s1;
            y[n + j] = s2;
        }
        return y;
    };

    const ModeState& ms0 = field.modes.at(k);

    // spectral path
    const ModeGenerator gen = mode_generator(vp, M, k, conv);
    Eigen::VectorXcd coeff(2 * (M + 1));
    coeff << ms0.h1, ms0.h2;
    coeff = evolve_stacked(gen.A, coeff, t);
    ModeState msT;
    msT.k = k;
    msT.h1 = coeff.head(M + 1);
    msT.h2 = coeff.tail(M + 1);
    const Eigen::VectorXcd spec_samples = mode_on_grid(msT);

    // grid path
    const GridGenerator og = collocation_generator(vp, k, grid);
    const Eigen::VectorXcd grid_samples = evolve(og, mode_on_grid(ms0), t);

    CompareReport rep;
    rep.k = k;
    rep.t = t;

    const double w1 = 1.0 / p.n_inf_1, w2 = 1.0 / p.n_inf_2;
    const Eigen::VectorXcd d1 = spec_samples.head(n) - grid_samples.head(n);
    const Eigen::VectorXcd d2 = spec_samples.tail(n) - grid_samples.tail(n);
    const double num =
        w1 * weighted_norm_sq(grid, d1, p.m1) + w2 * weighted_norm_sq(grid, d2, p.m2);
    const double den = w1 * weighted_norm_sq(grid, grid_samples.head(n), p.m1) +
                       w2 * weighted_norm_sq(grid, grid_samples.tail(n), p.m2);
    rep.l2_rel = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);

    const auto [q1s, q2s] = mode_moments(msT, vp);
    const PerturbationMoments q1g = perturbation_moments(grid, grid_samples.head(n), p.m1);
    const PerturbationMoments q2g = perturbation_moments(grid, grid_samples.tail(n), p.m2);
    auto pack = [](const PerturbationMoments& a, const PerturbationMoments& b) {
        Eigen::VectorXcd v(6);
        v << a.sigma, a.mu, a.tau, b.sigma, b.mu, b.tau;
        return v;
    };
    const Eigen::VectorXcd mspec = pack(q1s, q2s), mgrid = pack(q1g, q2g);
    const double mden = mgrid.norm();
    rep.moment_rel = mden > 0.0 ? (mspec - mgrid).norm() / mden : (mspec - mgrid).norm();
    return rep;
}

} // namespace oracle
} // namespace bgkmix

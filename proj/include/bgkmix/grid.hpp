#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "bgkmix/errors.hpp"

namespace bgkmix {

// Quadrature rule for integrals of Maxwellian-weighted functions over the
// whole velocity line: integral f(v) dv ~= sum_j weights[j] * f(nodes[j]).
//
// scale_mass tags the Gaussian decay e^{-scale_mass v^2/2} the rule is tuned
// to. Gauss-Hermite rules are exact for polynomials times that Gaussian;
// the uniform trapezoid rule on [-vmax, vmax] is the deliberately unlike
// alternative used for cross-checks.
struct VelocityGrid {
    enum class Kind { GaussHermite, UniformTrapezoid };

    Kind kind = Kind::GaussHermite;
    double scale_mass = 1.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

// Gauss-Hermite rule with nodes/weights mapped so that
//   integral g(v) dv ~= sum_j W_j g(v_j)   for g ~ poly * e^{-m v^2/2}.
//
// Nodes come from the Jacobi-matrix eigenvalues; the exp(x^2)-compensated
// weights are evaluated through the orthonormal Hermite-function recurrence,
// which stays in range even for several hundred nodes.
inline VelocityGrid gauss_hermite_grid(int n, double scale_mass = 1.0) {
    if (n < 1) throw Error("gauss_hermite_grid: need at least one node");
    if (!(scale_mass > 0.0)) throw NonPositiveError("gauss_hermite_grid: scale_mass must be positive");

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
    for (int j = 1; j < n; ++j) sub[j - 1] = std::sqrt(0.5 * j);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NonConvergenceError("gauss_hermite_grid: eigenvalue solve failed");
    Eigen::VectorXd x = es.eigenvalues(); // ascending

    const double s = std::sqrt(2.0 / scale_mass);
    VelocityGrid g;
    g.kind = VelocityGrid::Kind::GaussHermite;
    g.scale_mass = scale_mass;
    g.nodes.resize(n);
    g.weights.resize(n);
    const double pi_quarter = std::pow(M_PI, -0.25);
    for (int i = 0; i < n; ++i) {
        const double xi = x[i];
        // psi_k: Hermite functions orthonormal on dx; modified GH weight
        // w_i e^{x_i^2} = 1 / (n psi_{n-1}(x_i)^2).
        double pm1 = pi_quarter * std::exp(-0.5 * xi * xi);
        double pm2 = 0.0;
        for (int k = 1; k < n; ++k) {
            const double pk = std::sqrt(2.0 / k) * xi * pm1 - std::sqrt((k - 1.0) / k) * pm2;
            pm2 = pm1;
            pm1 = pk;
        }
        g.nodes[i] = s * xi;
        g.weights[i] = s / (n * pm1 * pm1);
    }
    return g;
}

// Trapezoid rule on [-vmax, vmax] with vmax = vmax_over_width / sqrt(m).
inline VelocityGrid uniform_grid(int n, double scale_mass = 1.0, double vmax_over_width = 10.0) {
    if (n < 2) throw Error("uniform_grid: need at least two nodes");
    if (!(scale_mass > 0.0)) throw NonPositiveError("uniform_grid: scale_mass must be positive");
    const double vmax = vmax_over_width / std::sqrt(scale_mass);
    const double dv = 2.0 * vmax / (n - 1);
    VelocityGrid g;
    g.kind = VelocityGrid::Kind::UniformTrapezoid;
    g.scale_mass = scale_mass;
    g.nodes.resize(n);
    g.weights.assign(n, dv);
    for (int i = 0; i < n; ++i) g.nodes[i] = -vmax + i * dv;
    g.weights.front() = 0.5 * dv;
    g.weights.back() = 0.5 * dv;
    return g;
}

template <typename Vec>
auto integrate(const VelocityGrid& g, const Vec& f) {
    typename Vec::value_type acc{};
    for (int j = 0; j < g.size(); ++j) acc += g.weights[j] * f[j];
    return acc;
}

// Sanity check used by grid consumers: the rule integrates its own matched
// unit Maxwellian to 1.
inline double unit_maxwellian_quadrature(const VelocityGrid& g) {
    const double m = g.scale_mass;
    const double pref = std::sqrt(m / (2.0 * M_PI));
    double acc = 0.0;
    for (int j = 0; j < g.size(); ++j)
        acc += g.weights[j] * pref * std::exp(-0.5 * m * g.nodes[j] * g.nodes[j]);
    return acc;
}

// Macroscopic state of one species.
struct MacroState {
    double n = 0.0; // number density
    double u = 0.0; // mean velocity
    double T = 0.0; // temperature
};

// Density, mean velocity and temperature of a sampled distribution (d = 1):
//   n = integral f, u = (1/n) integral v f, T = (m/n) integral (v-u)^2 f.
template <typename Vec>
MacroState moments(const VelocityGrid& g, const Vec& f, double mass, double density_tol = 1e-12) {
    double n = 0.0, nu = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        n += g.weights[j] * f[j];
        nu += g.weights[j] * g.nodes[j] * f[j];
    }
    if (!(n > density_tol)) throw DegenerateDensityError("moments: density below tolerance");
    const double u = nu / n;
    double acc = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double dv = g.nodes[j] - u;
        acc += g.weights[j] * dv * dv * f[j];
    }
    return {n, u, mass * acc / n};
}

} // namespace bgkmix

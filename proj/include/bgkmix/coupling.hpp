#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "bgkmix/params.hpp"

namespace bgkmix {

// Convention for the tridiagonal transport matrix. Projecting v*g_m onto the
// scaled-Hermite basis of a species with mass m gives off-diagonal entries
// sqrt(j+1)/sqrt(m); the printed unit-mass form drops the mass factor and is
// kept as an explicit switch for reproducing it.
enum class TransportConvention { MassScaled, UnitMass };

inline Eigen::MatrixXd transport_matrix(int max_order, double mass, TransportConvention conv) {
    const int n = max_order + 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    const double s = conv == TransportConvention::MassScaled ? 1.0 / std::sqrt(mass) : 1.0;
    for (int j = 0; j + 1 < n; ++j) {
        t(j, j + 1) = s * std::sqrt(j + 1.0);
        t(j + 1, j) = t(j, j + 1);
    }
    return t;
}

// Truncated coupling operators of the per-mode ODE system. Transport is
// tridiagonal; the relaxation/coupling operators are diagonal with their
// first three entries shaped by (delta, alpha) and the density/mass ratios:
//
//   self_relax            = diag(0, 0, 0, 1, 1, ...)
//   cross_relax_1         = diag(0, 1-delta, 1-alpha, 1, 1, ...)
//   cross_gain_1          = diag(0, (1-delta)(n1/n2)sqrt(m1/m2), (1-alpha)(n1/n2), 0, ...)
//   cross_relax_2         = diag(0, (m1/m2) eps (1-delta), eps (1-alpha), 1, 1, ...)
//   cross_gain_2          = diag(0, (n2/n1)sqrt(m1/m2) eps (1-delta), (n2/n1) eps (1-alpha), 0, ...)
//
// Species-1 coefficients live in the species-1 basis and species-2
// coefficients in the species-2 basis; equal matrices acting on the two
// species still mean different velocity profiles.
struct CouplingMatrices {
    Eigen::MatrixXd transport_1, transport_2; // per-species tridiagonal
    Eigen::MatrixXd self_relax;               // shared by both species
    Eigen::MatrixXd cross_relax_1, cross_gain_1;
    Eigen::MatrixXd cross_relax_2, cross_gain_2;
};

inline CouplingMatrices coupling_matrices(const ValidatedParams& vp, int max_order,
                                          TransportConvention conv = TransportConvention::MassScaled) {
    const MixtureParams p = vp.p();
    const int n = max_order + 1;
    CouplingMatrices cm;
    cm.transport_1 = transport_matrix(max_order, p.m1, conv);
    cm.transport_2 = transport_matrix(max_order, p.m2, conv);

    Eigen::VectorXd self = Eigen::VectorXd::Ones(n);
    self[0] = 0.0;
    if (n > 1) self[1] = 0.0;
    if (n > 2) self[2] = 0.0;
    cm.self_relax = self.asDiagonal();

    const double mass_ratio = std::sqrt(p.m1 / p.m2);
    const double dens12 = p.n_inf_1 / p.n_inf_2;
    const double dens21 = p.n_inf_2 / p.n_inf_1;

    Eigen::VectorXd cr1 = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd cg1 = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd cr2 = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd cg2 = Eigen::VectorXd::Zero(n);
    cr1[0] = 0.0;
    cr2[0] = 0.0;
    if (n > 1) {
        cr1[1] = 1.0 - p.delta;
        cg1[1] = (1.0 - p.delta) * dens12 * mass_ratio;
        cr2[1] = (p.m1 / p.m2) * p.epsilon * (1.0 - p.delta);
        cg2[1] = dens21 * mass_ratio * p.epsilon * (1.0 - p.delta);
    }
    if (n > 2) {
        cr1[2] = 1.0 - p.alpha;
        cg1[2] = (1.0 - p.alpha) * dens12;
        cr2[2] = p.epsilon * (1.0 - p.alpha);
        cg2[2] = dens21 * p.epsilon * (1.0 - p.alpha);
    }
    cm.cross_relax_1 = cr1.asDiagonal();
    cm.cross_gain_1 = cg1.asDiagonal();
    cm.cross_relax_2 = cr2.asDiagonal();
    cm.cross_gain_2 = cg2.asDiagonal();
    return cm;
}

// Generator of one Fourier mode: d/dt (h1; h2) = A (h1; h2) with
//   A11 = -i k (2 pi / L) T1 - nu11 n1 self_relax - nu12 n2 cross_relax_1
//   A12 = +nu12 n2 cross_gain_1
//   A21 = +nu21 n1 cross_gain_2
//   A22 = -i k (2 pi / L) T2 - nu22 n2 self_relax - nu21 n1 cross_relax_2.
struct ModeGenerator {
    int k = 0;
    Eigen::MatrixXcd A; // 2(max_order+1) square
};

inline ModeGenerator mode_generator(const ValidatedParams& vp, int max_order, int k,
                                    TransportConvention conv = TransportConvention::MassScaled) {
    if (k < 0) throw Error("mode_generator: negative mode index (use conjugate symmetry)");
    const MixtureParams p = vp.p();
    const CouplingMatrices cm = coupling_matrices(vp, max_order, conv);
    const int n = max_order + 1;
    const std::complex<double> ikc(0.0, k * 2.0 * M_PI / p.L);

    ModeGenerator g;
    g.k = k;
    g.A = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    g.A.topLeftCorner(n, n) = -ikc * cm.transport_1 -
                              (p.nu11 * p.n_inf_1 * cm.self_relax + p.nu12 * p.n_inf_2 * cm.cross_relax_1)
                                  .cast<std::complex<double>>();
    g.A.topRightCorner(n, n) = (p.nu12 * p.n_inf_2 * cm.cross_gain_1).cast<std::complex<double>>();
    g.A.bottomLeftCorner(n, n) = (p.nu21 * p.n_inf_1 * cm.cross_gain_2).cast<std::complex<double>>();
    g.A.bottomRightCorner(n, n) = -ikc * cm.transport_2 -
                                  (p.nu22 * p.n_inf_2 * cm.self_relax + p.nu21 * p.n_inf_1 * cm.cross_relax_2)
                                      .cast<std::complex<double>>();
    return g;
}

} // namespace bgkmix

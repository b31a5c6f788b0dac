#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "bgkmix/coupling.hpp"
#include "bgkmix/grid.hpp"
#include "bgkmix/hermite.hpp"
#include "bgkmix/linearize.hpp"
#include "bgkmix/params.hpp"

namespace bgkmix {

// Coefficients of one spatial Fourier mode, both species stacked separately.
struct ModeState {
    int k = 0;
    Eigen::VectorXcd h1, h2; // length max_order+1 each
};

// Truncated Fourier x Hermite representation of a perturbation pair.
// Only k >= 0 is stored; the physical field uses h_{-k} = conj(h_k).
struct SpectralField {
    ValidatedParams params;
    int max_order = 0;   // Hermite truncation M
    int max_fourier = 0; // Fourier truncation K
    std::vector<ModeState> modes;
    bool aliasing_warning = false;

    SpectralField(const ValidatedParams& vp, int M, int K)
        : params(vp), max_order(M), max_fourier(K), modes(K + 1) {
        for (int k = 0; k <= K; ++k) {
            modes[k].k = k;
            modes[k].h1 = Eigen::VectorXcd::Zero(M + 1);
            modes[k].h2 = Eigen::VectorXcd::Zero(M + 1);
        }
    }
};

inline SpectralField zero_field(const ValidatedParams& vp, int M, int K) {
    return SpectralField(vp, M, K);
}

// Moments carried by the first three coefficients of a mode:
//   sigma = h_(k,0), mu = h_(k,1)/sqrt(m), tau = sqrt(2) h_(k,2) + h_(k,0).
inline std::pair<PerturbationMoments, PerturbationMoments>
mode_moments(const ModeState& ms, const ValidatedParams& vp) {
    if (ms.h1.size() < 3)
        throw OrderOutOfRangeError("mode_moments: need max_order >= 2");
    const MixtureParams& p = vp.p();
    PerturbationMoments q1, q2;
    q1.sigma = ms.h1[0];
    q1.mu = ms.h1[1] / std::sqrt(p.m1);
    q1.tau = std::sqrt(2.0) * ms.h1[2] + ms.h1[0];
    q2.sigma = ms.h2[0];
    q2.mu = ms.h2[1] / std::sqrt(p.m2);
    q2.tau = std::sqrt(2.0) * ms.h2[2] + ms.h2[0];
    return {q1, q2};
}

// Projection of a pair of phase-space functions h_i(x, v) onto the truncated
// basis: discrete Fourier transform in x (uniform samples over one period,
// e^{+ikx} convention) and Gauss-Hermite quadrature against the orthonormal
// Hermite family in v.
struct ProjectOptions {
    int quadrature_nodes = 128;
    int x_samples = 0; // 0: chosen from K
};

inline SpectralField project(const ValidatedParams& vp,
                             const std::function<double(double, double)>& h1fn,
                             const std::function<double(double, double)>& h2fn, int M, int K,
                             const ProjectOptions& opt = {}) {
    const MixtureParams& p = vp.p();
    SpectralField field(vp, M, K);
    const int nx = opt.x_samples > 0 ? opt.x_samples : std::max(4 * (K + 1), 8);

    const HermiteBasis b1 = HermiteBasis::make(vp, 1, M);
    const HermiteBasis b2 = HermiteBasis::make(vp, 2, M);
    const VelocityGrid g1 = gauss_hermite_grid(opt.quadrature_nodes, p.m1);
    const VelocityGrid g2 = gauss_hermite_grid(opt.quadrature_nodes, p.m2);

    auto project_species = [&](const std::function<double(double, double)>& hfn,
                               const VelocityGrid& g, const HermiteBasis& b, int species) {
        const int nv = g.size();
        // Fourier modes of h(., v_j), k = 0..K.
        Eigen::MatrixXcd modes_v = Eigen::MatrixXcd::Zero(K + 1, nv);
        for (int l = 0; l < nx; ++l) {
            const double x = p.L * l / nx;
            for (int j = 0; j < nv; ++j) {
                const double hv = hfn(x, g.nodes[j]);
                for (int k = 0; k <= K; ++k) {
                    const double phase = -2.0 * M_PI * k * l / nx;
                    modes_v(k, j) += hv * Complex(std::cos(phase), std::sin(phase)) / double(nx);
                }
            }
        }
        // Quadrature against the polynomial part of the basis.
        for (int k = 0; k <= K; ++k) {
            Eigen::VectorXcd coeff = Eigen::VectorXcd::Zero(M + 1);
            for (int j = 0; j < nv; ++j) {
                const Eigen::VectorXd poly =
                    hermite_normalized_all(M, std::sqrt(b.mass) * g.nodes[j]);
                coeff += g.weights[j] * modes_v(k, j) * poly.cast<Complex>();
            }
            if (species == 1)
                field.modes[k].h1 = coeff;
            else
                field.modes[k].h2 = coeff;
        }
    };
    project_species(h1fn, g1, b1, 1);
    project_species(h2fn, g2, b2, 2);

    double total = 0.0, top = 0.0;
    for (int k = 0; k <= K; ++k) {
        const double shell = field.modes[k].h1.squaredNorm() + field.modes[k].h2.squaredNorm();
        total += shell;
        if (k == K) top = shell;
    }
    field.aliasing_warning = total > 0.0 && top > 0.01 * total;
    return field;
}

// Complex-valued point evaluation; the imaginary part is the reality residue
// for conjugate-symmetric fields.
inline std::pair<Complex, Complex> reconstruct_complex(const SpectralField& f, double x, double v) {
    const MixtureParams& p = f.params.p();
    const HermiteBasis b1 = HermiteBasis::make(f.params, 1, f.max_order);
    const HermiteBasis b2 = HermiteBasis::make(f.params, 2, f.max_order);
    const Eigen::VectorXd g1 = b1.eval_all(v);
    const Eigen::VectorXd g2 = b2.eval_all(v);
    Complex h1(0.0, 0.0), h2(0.0, 0.0);
    for (const ModeState& ms : f.modes) {
        Complex c1(0.0, 0.0), c2(0.0, 0.0);
        for (int m = 0; m <= f.max_order; ++m) {
            c1 += ms.h1[m] * g1[m];
            c2 += ms.h2[m] * g2[m];
        }
        const double phase = ms.k * 2.0 * M_PI * x / p.L;
        const Complex e(std::cos(phase), std::sin(phase));
        if (ms.k == 0) {
            h1 += c1;
            h2 += c2;
        } else {
            h1 += c1 * e + std::conj(c1 * e);
            h2 += c2 * e + std::conj(c2 * e);
        }
    }
    return {h1, h2};
}

inline std::pair<double, double> reconstruct(const SpectralField& f, double x, double v) {
    const auto [h1, h2] = reconstruct_complex(f, x, v);
    return {h1.real(), h2.real()};
}

// Time integration of the per-mode linear systems. Modes never couple.
struct EvolveMethod {
    enum class Kind { ExactExponential, RK4 };
    Kind kind = Kind::ExactExponential;
    double dt = 0.0; // RK4 step

    static EvolveMethod exact() { return {}; }
    static EvolveMethod rk4(double dt) { return {Kind::RK4, dt}; }
};

inline Eigen::VectorXcd evolve_stacked(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y0,
                                       double t, const EvolveMethod& method = {}) {
    if (t < 0.0) throw Error("evolve: negative time");
    if (t == 0.0) return y0;
    if (method.kind == EvolveMethod::Kind::ExactExponential) {
        return (A * t).exp() * y0;
    }
    const double dt = method.dt;
    if (!(dt > 0.0)) throw StepSizeError("evolve: RK4 needs dt > 0");
    const double norm_bound = std::min(A.cwiseAbs().rowwise().sum().maxCoeff(),
                                       A.cwiseAbs().colwise().sum().maxCoeff());
    if (dt * norm_bound > 2.7)
        throw StepSizeError("evolve: dt*||A|| exceeds the RK4 stability bound");
    Eigen::VectorXcd y = y0;
    double remaining = t;
    while (remaining > 0.0) {
        const double h = std::min(dt, remaining);
        const Eigen::VectorXcd k1 = A * y;
        const Eigen::VectorXcd k2 = A * (y + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = A * (y + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = A * (y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        remaining -= h;
    }
    return y;
}

inline SpectralField evolve(const SpectralField& f, double t, const EvolveMethod& method = {},
                            TransportConvention conv = TransportConvention::MassScaled) {
    SpectralField out = f;
    const int n = f.max_order + 1;
    for (ModeState& ms : out.modes) {
        const ModeGenerator gen = mode_generator(f.params, f.max_order, ms.k, conv);
        Eigen::VectorXcd y(2 * n);
        y << ms.h1, ms.h2;
        y = evolve_stacked(gen.A, y, t, method);
        ms.h1 = y.head(n);
        ms.h2 = y.tail(n);
    }
    return out;
}

} // namespace bgkmix

#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "bgkmix/params.hpp"
#include "bgkmix/spectral.hpp"

namespace bgkmix {

// Species weights in the entropy sum: either inverse equilibrium densities or
// the alternative density-ratio pair, which rescales the functional without
// changing which decay rates can be certified.
enum class WeightScheme { InverseDensity, DensityRatio };

inline std::pair<double, double> species_weights(const ValidatedParams& vp, WeightScheme scheme) {
    const MixtureParams& p = vp.p();
    if (scheme == WeightScheme::InverseDensity) return {1.0 / p.n_inf_1, 1.0 / p.n_inf_2};
    const double s = p.n_inf_1 + p.n_inf_2;
    return {p.n_inf_2 / s, p.n_inf_1 / s};
}

// Off-diagonal parameters of the mode-dependent entropy matrices. The three
// values tilt the quadratic form so that transport feeds the undamped
// moments into the damped ones.
struct EntropyParams {
    double alpha_tilde = 0.3;
    double beta = 0.3;
    double gamma_tilde = 0.3;
    WeightScheme scheme = WeightScheme::InverseDensity;
};

// Hermitian near-identity matrix of mode k: the identity for k = 0, and for
// k > 0 the identity plus imaginary couplings -i*alpha_tilde/k, -i*beta/k,
// -i*gamma_tilde/k on the first three super/sub-diagonal pairs.
inline Eigen::MatrixXcd entropy_matrix(const EntropyParams& ep, int k, int max_order,
                                       bool require_positive_definite = true) {
    if (k < 0) throw Error("entropy_matrix: negative mode index (use conjugate symmetry)");
    const int n = max_order + 1;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
    if (k > 0) {
        const Complex i(0.0, 1.0);
        const double couplings[3] = {ep.alpha_tilde, ep.beta, ep.gamma_tilde};
        for (int j = 0; j < 3 && j + 1 < n; ++j) {
            P(j, j + 1) = -i * couplings[j] / double(k);
            P(j + 1, j) = i * couplings[j] / double(k);
        }
    }
    if (require_positive_definite) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NonConvergenceError("entropy_matrix: eigenvalue check failed");
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw NotPositiveDefiniteError("entropy_matrix: P_k is not positive definite");
    }
    return P;
}

// Worst-case (k = 1) positive-definiteness of the whole matrix family.
// Entries shrink like 1/k, so k = 1 is binding.
inline bool entropy_params_admissible(const EntropyParams& ep, int max_order = 3) {
    if (!(ep.alpha_tilde >= 0.0 && ep.beta >= 0.0 && ep.gamma_tilde >= 0.0)) return false;
    const Eigen::MatrixXcd P = entropy_matrix(ep, 1, std::max(max_order, 3), false);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P, Eigen::EigenvaluesOnly);
    return es.info() == Eigen::Success && es.eigenvalues().minCoeff() > 0.0;
}

// Per-mode quadratic form w1 <h1, P_k h1> + w2 <h2, P_k h2>.
inline double mode_entropy(const ModeState& ms, const Eigen::MatrixXcd& P, double w1, double w2) {
    const Complex q1 = ms.h1.dot(P * ms.h1); // h1^H P h1
    const Complex q2 = ms.h2.dot(P * ms.h2);
    return w1 * q1.real() + w2 * q2.real();
}

// Entropy of a field: sum over all integer modes of the P_k-weighted species
// forms. Stored modes cover k >= 0; conjugate symmetry doubles k > 0.
inline double entropy(const SpectralField& f, const EntropyParams& ep, const ValidatedParams& vp) {
    const auto [w1, w2] = species_weights(vp, ep.scheme);
    double e = 0.0;
    for (const ModeState& ms : f.modes) {
        const Eigen::MatrixXcd P = entropy_matrix(ep, ms.k, f.max_order);
        const double term = mode_entropy(ms, P, w1, w2);
        e += ms.k == 0 ? term : 2.0 * term;
    }
    return e;
}

// Equivalence constants between the entropy and the plain weighted norm
// sum_k (w1 |h1,k|^2 + w2 |h2,k|^2): c = 1/lambda_max, C = 1/lambda_min over
// the eigenvalues of every P_k in the family (P_infinity = identity).
struct NormEquivalence {
    double c_lower = 1.0; // c_d
    double c_upper = 1.0; // C_d
};

inline NormEquivalence norm_equivalence(const EntropyParams& ep, int max_fourier, int max_order = 3) {
    double lo = 1.0, hi = 1.0; // eigenvalue 1 of the identity tail
    const int n = std::max(max_order, 3);
    for (int k = 1; k <= max_fourier; ++k) {
        const Eigen::MatrixXcd P = entropy_matrix(ep, k, n, false);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NonConvergenceError("norm_equivalence: eigenvalue solve failed");
        lo = std::min(lo, es.eigenvalues().minCoeff());
        hi = std::max(hi, es.eigenvalues().maxCoeff());
    }
    if (lo <= 0.0) throw NotPositiveDefiniteError("norm_equivalence: P_k not positive definite");
    return {1.0 / hi, 1.0 / lo};
}

// The weighted coefficient norm the equivalence is stated against.
inline double weighted_norm_sq(const SpectralField& f, const ValidatedParams& vp, WeightScheme scheme) {
    const auto [w1, w2] = species_weights(vp, scheme);
    double s = 0.0;
    for (const ModeState& ms : f.modes) {
        const double term = w1 * ms.h1.squaredNorm() + w2 * ms.h2.squaredNorm();
        s += ms.k == 0 ? term : 2.0 * term;
    }
    return s;
}

} // namespace bgkmix

#pragma once

#include <cmath>
#include <vector>

#include "bgkmix/entropy.hpp"
#include "bgkmix/rates.hpp"
#include "bgkmix/spectral.hpp"

namespace bgkmix {

// Entropy trace of an evolved field, with the k = 0 moments alongside for
// plotting and the per-mode contributions when requested.
struct EntropyTrace {
    std::vector<double> times;
    std::vector<double> entropy_values;
    std::vector<PerturbationMoments> k0_species1, k0_species2;
    std::vector<std::vector<double>> per_mode; // [sample][k], optional
};

inline EntropyTrace entropy_trace(const SpectralField& initial, const EntropyParams& ep,
                                  const std::vector<double>& times,
                                  const EvolveMethod& method = {},
                                  TransportConvention conv = TransportConvention::MassScaled,
                                  bool keep_per_mode = false) {
    EntropyTrace tr;
    tr.times = times;
    const auto [w1, w2] = species_weights(initial.params, ep.scheme);
    for (double t : times) {
        const SpectralField ft = evolve(initial, t, method, conv);
        double e = 0.0;
        std::vector<double> contributions;
        for (const ModeState& ms : ft.modes) {
            const Eigen::MatrixXcd P = entropy_matrix(ep, ms.k, ft.max_order);
            const double term = (ms.k == 0 ? 1.0 : 2.0) * mode_entropy(ms, P, w1, w2);
            e += term;
            if (keep_per_mode) contributions.push_back(term);
        }
        tr.entropy_values.push_back(e);
        const auto [q1, q2] = mode_moments(ft.modes[0], ft.params);
        tr.k0_species1.push_back(q1);
        tr.k0_species2.push_back(q2);
        if (keep_per_mode) tr.per_mode.push_back(std::move(contributions));
    }
    return tr;
}

// Outcome of checking a trace against the certified exponential bound
// e(t) <= (1+tol) e(0) exp(-C_tilde t), plus a least-squares fit of the
// empirical rate.
struct DecayReport {
    std::vector<double> times;
    std::vector<double> entropy_values;
    std::vector<double> bound_values;
    double C_tilde = 0.0;
    double tolerance = 0.01;
    bool bound_satisfied = false;
    bool rate_defined = false; // false for identically zero traces
    double fitted_rate = 0.0;
    std::vector<double> mode_abscissas; // max Re eigenvalue per k
};

inline DecayReport verify_decay(const std::vector<double>& times,
                                const std::vector<double>& entropy_values, double C_tilde,
                                double tol = 0.01) {
    DecayReport rep;
    rep.times = times;
    rep.entropy_values = entropy_values;
    rep.C_tilde = C_tilde;
    rep.tolerance = tol;

    const double e0 = entropy_values.empty() ? 0.0 : entropy_values.front();
    bool ok = true;
    for (size_t i = 0; i < times.size(); ++i) {
        const double bound = e0 * std::exp(-C_tilde * times[i]);
        rep.bound_values.push_back(bound);
        if (entropy_values[i] > (1.0 + tol) * bound + 1e-300) ok = false;
    }
    rep.bound_satisfied = ok;

    // least-squares slope of log e(t) over the strictly positive samples
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int np = 0;
    for (size_t i = 0; i < times.size(); ++i) {
        if (entropy_values[i] > 0.0) {
            const double y = std::log(entropy_values[i]);
            sx += times[i];
            sy += y;
            sxx += times[i] * times[i];
            sxy += times[i] * y;
            ++np;
        }
    }
    const double denom = np * sxx - sx * sx;
    if (np >= 2 && std::abs(denom) > 0.0) {
        rep.rate_defined = true;
        rep.fitted_rate = -(np * sxy - sx * sy) / denom;
    }
    return rep;
}

inline std::vector<double> mode_abscissas(const ValidatedParams& vp, int max_order, int max_fourier,
                                          TransportConvention conv = TransportConvention::MassScaled) {
    std::vector<double> out(max_fourier + 1);
    parallel_for(max_fourier + 1, [&](int k) {
        out[k] = spectral_abscissa(mode_generator(vp, max_order, k, conv).A);
    });
    return out;
}

} // namespace bgkmix

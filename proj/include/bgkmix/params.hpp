#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bgkmix/errors.hpp"

namespace bgkmix {

// Model constants for the two-species BGK mixture in 1D.
//
// Collision frequencies are tied by nu12 = epsilon * nu21. The interpolation
// parameters (delta, alpha, gamma) shape the cross-species Maxwellians; their
// admissible region guarantees positivity of the mixture temperatures.
struct MixtureParams {
    double m1 = 1.0, m2 = 1.0;           // particle masses
    double nu11 = 0.5, nu12 = 0.5;       // collision-frequency coefficients
    double nu21 = 0.5, nu22 = 0.5;
    double epsilon = 1.0;                // frequency ratio, nu12 = epsilon*nu21
    double delta = 0.5;                  // velocity interpolation
    double alpha = 0.5;                  // temperature interpolation
    double gamma = 0.0;                  // velocity-difference temperature term
    double n_inf_1 = 1.0, n_inf_2 = 1.0; // equilibrium number densities
    double L = 2.0 * M_PI;               // torus side length

    // Lower admissible bound for delta.
    double delta_min() const {
        const double r = epsilon * m1 / m2;
        return (r - 1.0) / (1.0 + r);
    }
    // Upper admissible bound for gamma, given delta (d = 1).
    double gamma_max() const {
        const double r = epsilon * m1 / m2;
        return m1 * (1.0 - delta) * ((1.0 + r) * delta + 1.0 - r);
    }
};

// One failed admissibility inequality, as lhs-vs-rhs for reporting.
struct ConstraintViolation {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
};

// Every evaluated constraint, passed or not; reports carry one record each.
struct ConstraintRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = true;
};

struct ValidationReport {
    std::vector<ConstraintRecord> checks;
    std::vector<ConstraintViolation> violations;
    bool rate_normalized = false; // nu11*n1+nu12*n2 == 1 == nu22*n2+nu21*n1
    bool ok() const { return violations.empty(); }
};

// Parameters that passed validation; constructed only through validate().
class ValidatedParams {
  public:
    const MixtureParams& p() const { return p_; }
    bool rate_normalized() const { return rate_normalized_; }

  private:
    friend struct Validation;
    ValidatedParams(const MixtureParams& p, bool rn) : p_(p), rate_normalized_(rn) {}
    MixtureParams p_;
    bool rate_normalized_;
};

struct Validation {
    ValidationReport report;
    std::optional<ValidatedParams> params;

    static Validation make(const MixtureParams& p, const ValidationReport& r) {
        Validation v;
        v.report = r;
        if (r.ok()) v.params = ValidatedParams(p, r.rate_normalized);
        return v;
    }
};

// Checks every admissibility constraint and collects all violations.
// The unit relaxation-rate normalization is reported as a flag, not a
// failure: the nonlinear model is usable without it.
inline Validation validate(const MixtureParams& p) {
    ValidationReport rep;
    auto record = [&rep](const std::string& name, bool ok, double lhs, double rhs) {
        rep.checks.push_back({name, lhs, rhs, ok});
        if (!ok) rep.violations.push_back({name, lhs, rhs});
    };

    const double fields[] = {p.m1,   p.m2,    p.nu11,  p.nu12,  p.nu21,
                             p.nu22, p.epsilon, p.delta, p.alpha, p.gamma,
                             p.n_inf_1, p.n_inf_2, p.L};
    for (double f : fields) {
        if (!std::isfinite(f)) {
            record("all fields finite", false, f, 0.0);
            return Validation::make(p, rep);
        }
    }
    record("all fields finite", true, 0.0, 0.0);

    record("m1 > 0", p.m1 > 0.0, p.m1, 0.0);
    record("m2 > 0", p.m2 > 0.0, p.m2, 0.0);
    record("n_inf_1 > 0", p.n_inf_1 > 0.0, p.n_inf_1, 0.0);
    record("n_inf_2 > 0", p.n_inf_2 > 0.0, p.n_inf_2, 0.0);
    record("L > 0", p.L > 0.0, p.L, 0.0);
    record("nu11 >= 0", p.nu11 >= 0.0, p.nu11, 0.0);
    record("nu12 >= 0", p.nu12 >= 0.0, p.nu12, 0.0);
    record("nu21 >= 0", p.nu21 >= 0.0, p.nu21, 0.0);
    record("nu22 >= 0", p.nu22 >= 0.0, p.nu22, 0.0);
    record("epsilon in (0,1]", p.epsilon > 0.0 && p.epsilon <= 1.0, p.epsilon, 1.0);

    if (!rep.violations.empty()) return Validation::make(p, rep);

    const double tied = p.epsilon * p.nu21;
    record("nu12 == epsilon*nu21",
           std::abs(p.nu12 - tied) <= 1e-12 * std::max(1.0, std::abs(tied)), p.nu12, tied);

    record("alpha in [0,1]", p.alpha >= 0.0 && p.alpha <= 1.0, p.alpha, 1.0);
    record("gamma >= 0", p.gamma >= 0.0, p.gamma, 0.0);

    const double dmin = p.delta_min();
    record("delta >= (eps*m1/m2-1)/(1+eps*m1/m2)", p.delta >= dmin, p.delta, dmin);
    record("delta <= 1", p.delta <= 1.0, p.delta, 1.0);

    if (p.delta >= dmin && p.delta <= 1.0) {
        const double gmax = p.gamma_max();
        record("gamma <= m1*(1-delta)*((1+eps*m1/m2)*delta+1-eps*m1/m2)", p.gamma <= gmax,
               p.gamma, gmax);
    }

    const double row1 = p.nu11 * p.n_inf_1 + p.nu12 * p.n_inf_2;
    const double row2 = p.nu22 * p.n_inf_2 + p.nu21 * p.n_inf_1;
    rep.rate_normalized = std::abs(row1 - 1.0) <= 1e-12 && std::abs(row2 - 1.0) <= 1e-12;

    return Validation::make(p, rep);
}

// Convenience for tests and internal presets: validate or throw.
inline ValidatedParams validate_or_throw(const MixtureParams& p) {
    Validation v = validate(p);
    if (!v.params) {
        std::string msg = "invalid mixture parameters:";
        for (const auto& c : v.report.violations) msg += " [" + c.name + "]";
        throw ValidationError(msg);
    }
    return *v.params;
}

} // namespace bgkmix

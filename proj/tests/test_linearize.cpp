#include <doctest.h>

#include <cmath>

#include "bgkmix/hermite.hpp"
#include "bgkmix/linearize.hpp"
#include "bgkmix/model.hpp"
#include "test_support.hpp"

using namespace bgkmix;
using bgkmix::testing::asymmetric_params;
using bgkmix::testing::symmetric_params;

namespace {

Eigen::VectorXcd sample_basis(const HermiteBasis& b, int order, const VelocityGrid& g) {
    Eigen::VectorXcd h(g.size());
    for (int j = 0; j < g.size(); ++j) h[j] = b.eval(order, g.nodes[j]);
    return h;
}

} // namespace

TEST_CASE("perturbation moments of the low-order basis functions") {
    const auto vp = validate_or_throw(symmetric_params());
    const VelocityGrid g = gauss_hermite_grid(128, 1.0);
    const HermiteBasis b = HermiteBasis::make(vp, 1, 4);

    SUBCASE("zero perturbation") {
        const PerturbationMoments pm = perturbation_moments(g, Eigen::VectorXcd::Zero(g.size()), 1.0);
        CHECK(std::abs(pm.sigma) == 0.0);
        CHECK(std::abs(pm.mu) == 0.0);
        CHECK(std::abs(pm.tau) == 0.0);
    }
    SUBCASE("first-order basis function carries unit momentum") {
        const PerturbationMoments pm = perturbation_moments(g, sample_basis(b, 1, g), 1.0);
        CHECK(std::abs(pm.sigma) < 1e-12);
        CHECK(std::abs(pm.mu - 1.0) < 1e-12);
        CHECK(std::abs(pm.tau) < 1e-12); // odd integrand
    }
    SUBCASE("second-order basis function carries sqrt(2) energy") {
        const PerturbationMoments pm = perturbation_moments(g, sample_basis(b, 2, g), 1.0);
        CHECK(std::abs(pm.sigma) < 1e-12);
        CHECK(std::abs(pm.mu) < 1e-12);
        CHECK(std::abs(pm.tau - std::sqrt(2.0)) < 1e-12);
    }
}

TEST_CASE("derivative tables: closed-form endpoints") {
    SUBCASE("alpha = 1 kills the sigma2 coupling of M12") {
        MixtureParams p = symmetric_params();
        p.alpha = 1.0;
        const DerivativeTable t = m12_derivative_table(validate_or_throw(p));
        for (double v : {-2.0, -0.5, 0.0, 1.0, 3.0}) CHECK(t.d_sigma2(v) == 0.0);
    }
    SUBCASE("delta = 1 kills the mu2 coupling of M12") {
        MixtureParams p = symmetric_params();
        p.delta = 1.0;
        const DerivativeTable t = m12_derivative_table(validate_or_throw(p));
        for (double v : {-2.0, -0.5, 0.0, 1.0, 3.0}) CHECK(t.d_mu2(v) == 0.0);
    }
    SUBCASE("eps = 1, alpha = 0: tau1 coupling of M21") {
        MixtureParams p = asymmetric_params();
        p.epsilon = 1.0;
        p.nu12 = p.nu21;
        p.alpha = 0.0;
        const auto vp = validate_or_throw(p);
        const DerivativeTable t = m21_derivative_table(vp);
        for (double v : {-1.0, 0.0, 0.7}) {
            const double f2 = equilibrium(vp, 2, v);
            const double expect = 0.5 / p.n_inf_1 * (p.m2 * v * v - 1.0) * f2;
            CHECK(t.d_tau1(v) == doctest::Approx(expect).epsilon(1e-13));
        }
    }
}

TEST_CASE("derivative tables agree with finite differences of the exact forms") {
    CHECK(check_derivatives_fd(validate_or_throw(symmetric_params()), 1e-5) < 1e-6);
    CHECK(check_derivatives_fd(validate_or_throw(asymmetric_params()), 1e-5) < 1e-6);
    MixtureParams p = asymmetric_params();
    p.gamma = 0.8 * p.gamma_max();
    CHECK(check_derivatives_fd(validate_or_throw(p), 1e-5) < 1e-6);
}

TEST_CASE("a corrupted table coefficient is detected") {
    const auto vp = validate_or_throw(symmetric_params());
    DerivativeTable t12 = m12_derivative_table(vp);
    const std::function<double(double)> clean = t12.d[0];
    t12.d[0] = std::function<double(double)>(
        [clean, vp](double v) { return clean(v) + 1e-3 * equilibrium(vp, 1, v); });
    CHECK(fd_table_error(vp, 1e-5, t12, m21_derivative_table(vp)) > 1e-4);
}

TEST_CASE("linearized collision terms: fixed point and basis responses") {
    const auto vp = validate_or_throw(symmetric_params());
    const MixtureParams& p = vp.p();
    const VelocityGrid g = gauss_hermite_grid(160, 1.0);
    const HermiteBasis b1 = HermiteBasis::make(vp, 1, 4);
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(g.size());

    SUBCASE("equilibrium is a fixed point") {
        const auto [r1, r2] = linearized_rhs(vp, g, zero, zero);
        CHECK(r1.norm() == 0.0);
        CHECK(r2.norm() == 0.0);
    }
    SUBCASE("third-order basis function relaxes with the full rate") {
        const Eigen::VectorXcd h1 = sample_basis(b1, 3, g);
        const auto [r1, r2] = linearized_rhs(vp, g, h1, zero);
        const double rate = p.nu11 * p.n_inf_1 + p.nu12 * p.n_inf_2;
        CHECK((r1 + rate * h1).lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK(r2.lpNorm<Eigen::Infinity>() < 1e-14);
    }
    SUBCASE("density perturbations are not damped") {
        const Eigen::VectorXcd h1 = 0.37 * sample_basis(b1, 0, g);
        const auto [r1, r2] = linearized_rhs(vp, g, h1, zero);
        CHECK(r1.lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK(r2.lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("linearized collision terms annihilate the collision invariants") {
    const auto vp = validate_or_throw(asymmetric_params());
    const MixtureParams& p = vp.p();
    const VelocityGrid g = gauss_hermite_grid(240, std::min(p.m1, p.m2));
    // a generic smooth perturbation pair
    Eigen::VectorXcd h1(g.size()), h2(g.size());
    for (int j = 0; j < g.size(); ++j) {
        const double v = g.nodes[j];
        h1[j] = (0.3 + 0.2 * v - 0.1 * v * v) * equilibrium(vp, 1, v);
        h2[j] = (-0.1 + 0.4 * v + 0.05 * v * v * v) * equilibrium(vp, 2, v);
    }
    const auto [r1, r2] = linearized_rhs(vp, g, h1, h2);
    Complex c1{}, c2{}, mom{}, en{};
    for (int j = 0; j < g.size(); ++j) {
        const double w = g.weights[j], v = g.nodes[j];
        c1 += w * r1[j];
        c2 += w * r2[j];
        mom += w * v * (p.m1 * r1[j] + p.m2 * r2[j]);
        en += w * v * v * (p.m1 * r1[j] + p.m2 * r2[j]);
    }
    CHECK(std::abs(c1) < 1e-10);
    CHECK(std::abs(c2) < 1e-10);
    CHECK(std::abs(mom) < 1e-10);
    CHECK(std::abs(en) < 1e-10);
}

TEST_CASE("linearized collision terms are linear") {
    const auto vp = validate_or_throw(asymmetric_params());
    const MixtureParams& p = vp.p();
    const VelocityGrid g = gauss_hermite_grid(120, std::min(p.m1, p.m2));
    Eigen::VectorXcd a1(g.size()), a2(g.size()), b1(g.size()), b2(g.size());
    for (int j = 0; j < g.size(); ++j) {
        const double v = g.nodes[j];
        a1[j] = Complex(0.2, -0.1) * v * equilibrium(vp, 1, v);
        a2[j] = Complex(0.0, 0.3) * equilibrium(vp, 2, v);
        b1[j] = Complex(-0.4, 0.2) * (v * v - 1.0) * equilibrium(vp, 1, v);
        b2[j] = Complex(0.1, 0.0) * v * equilibrium(vp, 2, v);
    }
    const Complex ca(1.3, -0.7), cb(-0.2, 0.5);
    const auto [ra1, ra2] = linearized_rhs(vp, g, a1, a2);
    const auto [rb1, rb2] = linearized_rhs(vp, g, b1, b2);
    const auto [rc1, rc2] = linearized_rhs(vp, g, ca * a1 + cb * b1, ca * a2 + cb * b2);
    CHECK((rc1 - ca * ra1 - cb * rb1).lpNorm<Eigen::Infinity>() < 1e-13);
    CHECK((rc2 - ca * ra2 - cb * rb2).lpNorm<Eigen::Infinity>() < 1e-13);
}

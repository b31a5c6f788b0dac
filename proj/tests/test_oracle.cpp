#include <doctest.h>

#include <cmath>

#include "bgkmix/model.hpp"
#include "bgkmix/oracle.hpp"
#include "test_support.hpp"

using namespace bgkmix;
using bgkmix::testing::asymmetric_params;
using bgkmix::testing::symmetric_params;

TEST_CASE("collocation generator structure") {
    const auto vp = validate_or_throw(symmetric_params());
    const VelocityGrid g = gauss_hermite_grid(200, 1.0);
    const oracle::GridGenerator og = oracle::collocation_generator(vp, 0, g);

    SUBCASE("relaxation diagonal equals -1 at unit normalization") {
        CHECK(og.relax_1 == doctest::Approx(1.0));
        CHECK(og.relax_2 == doctest::Approx(1.0));
    }
    SUBCASE("collision part has rank at most 12") {
        const int n = g.size();
        Eigen::MatrixXcd coll = og.B;
        coll.topLeftCorner(n, n).diagonal().array() += og.relax_1;
        coll.bottomRightCorner(n, n).diagonal().array() += og.relax_2;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coll);
        const double top = svd.singularValues()[0];
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()[i] > 1e-12 * top) ++rank;
        CHECK(rank <= 12);
    }
    SUBCASE("density functionals annihilate the equilibrium direction") {
        const int n = g.size();
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(2 * n);
        for (int j = 0; j < n; ++j) y[j] = equilibrium(vp, 1, g.nodes[j]);
        const Eigen::VectorXcd by = og.B * y;
        Complex count1{}, count2{};
        for (int j = 0; j < n; ++j) {
            count1 += g.weights[j] * by[j];
            count2 += g.weights[j] * by[n + j];
        }
        CHECK(std::abs(count1) < 1e-10);
        CHECK(std::abs(count2) < 1e-10);
    }
    SUBCASE("too-coarse grids are rejected") {
        CHECK_THROWS_AS(oracle::collocation_generator(vp, 0, gauss_hermite_grid(24, 1.0)),
                        GridTooCoarseError);
    }
}

TEST_CASE("collocation generator matches the velocity-space collision terms") {
    // B (minus transport) applied to sampled data must agree with the direct
    // evaluation, since both realize the same bracketed expressions.
    const auto vp = validate_or_throw(asymmetric_params());
    const MixtureParams& p = vp.p();
    const VelocityGrid g = uniform_grid(201, std::min(p.m1, p.m2));
    const int n = g.size();
    const int k = 3;
    const oracle::GridGenerator og = oracle::collocation_generator(vp, k, g);

    SplitMix64 rng(13);
    Eigen::VectorXcd h1(n), h2(n);
    for (int j = 0; j < n; ++j) {
        const double v = g.nodes[j];
        h1[j] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) * equilibrium(vp, 1, v);
        h2[j] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) * equilibrium(vp, 2, v);
    }
    const auto [r1, r2] = linearized_rhs(vp, g, h1, h2);
    Eigen::VectorXcd stacked(2 * n);
    stacked << h1, h2;
    const Eigen::VectorXcd by = og.B * stacked;
    const Complex ikc(0.0, k * 2.0 * M_PI / p.L);
    for (int j = 0; j < n; ++j) {
        CHECK(std::abs(by[j] - (r1[j] - ikc * g.nodes[j] * h1[j])) < 1e-12);
        CHECK(std::abs(by[n + j] - (r2[j] - ikc * g.nodes[j] * h2[j])) < 1e-12);
    }
}

TEST_CASE("oracle evolution: conservation and stability at k = 0") {
    const auto vp = validate_or_throw(asymmetric_params());
    const MixtureParams& p = vp.p();
    const VelocityGrid g = uniform_grid(301, std::min(p.m1, p.m2));
    const int n = g.size();
    const oracle::GridGenerator og = oracle::collocation_generator(vp, 0, g);

    SUBCASE("zero stays zero") {
        const Eigen::VectorXcd z = oracle::evolve(og, Eigen::VectorXcd::Zero(2 * n), 2.0);
        CHECK(z.norm() == 0.0);
    }
    SUBCASE("counts, momentum and energy of the perturbation are conserved") {
        Eigen::VectorXcd y(2 * n);
        for (int j = 0; j < n; ++j) {
            const double v = g.nodes[j];
            y[j] = (0.4 - 0.3 * v + 0.2 * v * v) * equilibrium(vp, 1, v);
            y[n + j] = (0.1 + 0.5 * v) * equilibrium(vp, 2, v);
        }
        auto functionals = [&](const Eigen::VectorXcd& s) {
            Complex c1{}, c2{}, mom{}, en{};
            for (int j = 0; j < n; ++j) {
                const double w = g.weights[j], v = g.nodes[j];
                c1 += w * s[j];
                c2 += w * s[n + j];
                mom += w * v * (p.m1 * s[j] + p.m2 * s[n + j]);
                en += w * v * v * (p.m1 * s[j] + p.m2 * s[n + j]);
            }
            return std::array<Complex, 4>{c1, c2, mom, en};
        };
        const auto q0 = functionals(y);
        const auto qt = functionals(oracle::evolve(og, y, 5.0));
        for (int i = 0; i < 4; ++i) CHECK(std::abs(qt[i] - q0[i]) < 1e-10);
    }
    SUBCASE("spectrum: zero block plus strictly damped rest for normalized parameters") {
        SplitMix64 rng(6);
        const auto vpn = validate_or_throw(testing::random_rate_normalized(rng));
        const VelocityGrid gn = uniform_grid(241, std::min(vpn.p().m1, vpn.p().m2));
        const oracle::GridGenerator ogn = oracle::collocation_generator(vpn, 0, gn);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ogn.B, false);
        const auto ev = es.eigenvalues();
        int zeros = 0;
        for (int i = 0; i < ev.size(); ++i) {
            CHECK(ev[i].real() < 1e-9);
            if (std::abs(ev[i]) < 1e-9) ++zeros;
        }
        CHECK(zeros >= 3); // two counts + conserved momentum/energy combinations
    }
}

TEST_CASE("grid refinement changes the oracle answer below tolerance") {
    const auto vp = validate_or_throw(symmetric_params());
    auto run = [&](int nv) {
        const VelocityGrid g = uniform_grid(nv, 1.0);
        const int n = g.size();
        const oracle::GridGenerator og = oracle::collocation_generator(vp, 1, g);
        Eigen::VectorXcd y(2 * n);
        for (int j = 0; j < n; ++j) {
            const double v = g.nodes[j];
            y[j] = v * equilibrium(vp, 1, v);
            y[n + j] = (v * v - 1.0) * equilibrium(vp, 2, v);
        }
        const Eigen::VectorXcd yt = oracle::evolve(og, y, 1.0);
        PerturbationMoments q1 = perturbation_moments(g, yt.head(n), 1.0);
        PerturbationMoments q2 = perturbation_moments(g, yt.tail(n), 1.0);
        return std::array<Complex, 6>{q1.sigma, q1.mu, q1.tau, q2.sigma, q2.mu, q2.tau};
    };
    const auto coarse = run(201), fine = run(401);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(coarse[i] - fine[i]) < 1e-6);
}

TEST_CASE("spectral solver against the grid oracle") {
    const auto vp = validate_or_throw(testing::mild_asymmetric_params());
    const MixtureParams& p = vp.p();
    const double scale = std::min(p.m1, p.m2);

    SUBCASE("zero data compare to zero") {
        const SpectralField f = zero_field(vp, 8, 2);
        const oracle::CompareReport rep = oracle::compare(f, 1, 1.0, uniform_grid(241, scale));
        CHECK(rep.l2_rel == 0.0);
        CHECK(rep.moment_rel == 0.0);
    }

    SUBCASE("low-order data at generous truncation agree to 1e-6") {
        // The moments converge much earlier than the full weighted norm: the
        // free-streaming phase cascades energy up the Hermite ladder, so the
        // pointwise answer needs more headroom than the first three moments.
        SpectralField f = zero_field(vp, 16, 4);
        f.modes[1].h1.head(4) << Complex(0.3, 0.1), Complex(-0.2, 0.4), Complex(0.5, 0.0),
            Complex(0.0, -0.3);
        f.modes[1].h2.head(4) << Complex(-0.1, 0.2), Complex(0.6, -0.5), Complex(0.2, 0.2),
            Complex(0.1, 0.0);
        for (const VelocityGrid& g :
             {gauss_hermite_grid(300, scale), uniform_grid(301, scale)}) {
            const oracle::CompareReport rep = oracle::compare(f, 1, 1.0, g);
            CHECK(rep.moment_rel < 1e-6);
            CHECK(rep.l2_rel < 1e-3);
        }
    }

    SUBCASE("weighted-norm discrepancy vanishes with the truncation order") {
        auto l2_at = [&](int M) {
            SpectralField f = zero_field(vp, M, 1);
            f.modes[1].h1.head(4) << Complex(0.3, 0.1), Complex(-0.2, 0.4), Complex(0.5, 0.0),
                Complex(0.0, -0.3);
            f.modes[1].h2.head(4) << Complex(-0.1, 0.2), Complex(0.6, -0.5), Complex(0.2, 0.2),
                Complex(0.1, 0.0);
            return oracle::compare(f, 1, 1.0, uniform_grid(301, scale)).l2_rel;
        };
        CHECK(l2_at(24) < 1e-6);
        CHECK(l2_at(40) < 1e-10);
    }

    SUBCASE("truncation error shrinks as the Hermite order grows") {
        // data with content up to order 3, evolved under transport that
        // pushes it upward; M = 3 drops the escaping flux, M = 40 keeps it
        auto discrepancy = [&](int M) {
            SpectralField f = zero_field(vp, M, 4);
            f.modes[4].h1[3] = 1.0;
            f.modes[4].h2[2] = Complex(0.0, 1.0);
            const oracle::CompareReport rep =
                oracle::compare(f, 4, 1.0, uniform_grid(301, scale));
            return rep.moment_rel;
        };
        const double rough = discrepancy(3);
        const double mid = discrepancy(10);
        const double fine = discrepancy(40);
        CHECK(rough > mid);
        CHECK(mid > fine);
        CHECK(fine < 1e-8);
    }
}

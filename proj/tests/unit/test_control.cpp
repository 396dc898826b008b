#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "impact/control.hpp"

using namespace impact;

namespace {

// Characteristic coefficients straight from trace and determinant, an
// independent route to the same polynomial the closed forms expand.
Eigen::Vector3d coeffs_by_trace(const Eigen::Matrix3d& m) {
    const Real tr = m.trace();
    const Real tr2 = (m * m).trace();
    Eigen::Vector3d c;
    c[0] = -tr;
    c[1] = (tr * tr - tr2) / 2.0;
    c[2] = -m.determinant();
    return c;
}

constexpr std::array<std::complex<Real>, 3> kThird = {
    std::complex<Real>(1.0 / 3.0, 0.0), std::complex<Real>(1.0 / 3.0, 0.0),
    std::complex<Real>(1.0 / 3.0, 0.0)};

}  // namespace

TEST_CASE("system matrices at the unit point") {
    const SystemMatrices m = system_matrices(1.0, 1.0, 1.0);
    Eigen::Matrix3d expected;
    expected << 1.0, 1.0, 0.0,
                0.0, 1.0, 0.0,
                0.0, 1.0, 0.0;
    CHECK((m.A - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.B[0] == 1.0);
    CHECK(m.B[1] == 1.0);
    CHECK(m.B[2] == 0.0);

    const Eigen::Matrix3d w = controllability_matrix(m);
    CHECK(w(0, 1) == 2.0);
    CHECK(w(0, 2) == 3.0);
    CHECK(w.determinant() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("controllability determinant collapses to the quote slope") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<Real> par(0.05, 4.0);
    for (int trial = 0; trial < 300; ++trial) {
        const Real lambda = par(rng);
        const SystemMatrices m = system_matrices(lambda, par(rng), par(rng));
        const Real det = controllability_matrix(m).determinant();
        CHECK(det == doctest::Approx(lambda).epsilon(1e-9));
        CHECK(is_controllable(m));
    }
    CHECK_FALSE(is_controllable(system_matrices(0.0, 1.0, 1.0)));
    CHECK_FALSE(is_controllable(system_matrices(1e-12, 1.0, 1.0)));
    CHECK(is_controllable(system_matrices(1e-12, 1.0, 1.0), 1e-15));
}

TEST_CASE("closed-loop polynomial matches the trace expansion") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<Real> par(0.05, 3.0);
    std::uniform_real_distribution<Real> g(-2.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const SystemMatrices m = system_matrices(par(rng), par(rng), par(rng));
        const Eigen::RowVector3d sigma(g(rng), g(rng), g(rng));
        const Eigen::Vector3d fast = char_poly_coeffs(m, sigma);
        const Eigen::Vector3d slow = coeffs_by_trace(m.A - m.B * sigma);
        CHECK((fast - slow).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("pole placement at the one-third triple") {
    const FeedbackGain gain = pole_place(1.0, 1.0, 1.0, kThird);
    CHECK(gain.sigma[0] == doctest::Approx(8.0 / 27.0).epsilon(1e-15));
    CHECK(gain.sigma[1] == doctest::Approx(19.0 / 27.0).epsilon(1e-15));
    CHECK(gain.sigma[2] == doctest::Approx(1.0 / 27.0).epsilon(1e-15));
    CHECK(gain.delta[0] == doctest::Approx(-1.0));
    CHECK(gain.delta[1] == doctest::Approx(1.0 / 3.0));
    CHECK(gain.delta[2] == doctest::Approx(-1.0 / 27.0));
    CHECK(gain.stable);
    CHECK(gain.max_abs_phi == doctest::Approx(1.0 / 3.0));

    // the achieved polynomial really is (z - 1/3)^3
    const SystemMatrices m = system_matrices(1.0, 1.0, 1.0);
    const Eigen::Vector3d c = coeffs_by_trace(m.A - m.B * gain.sigma);
    CHECK(c[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(c[2] == doctest::Approx(-1.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("deadbeat gain annihilates the state in three steps") {
    const std::array<std::complex<Real>, 3> origin = {};
    const FeedbackGain gain = pole_place(1.0, 1.0, 1.0, origin);
    CHECK(gain.sigma[0] == 1.0);
    CHECK(gain.sigma[1] == 1.0);
    CHECK(gain.sigma[2] == 0.0);

    const SystemMatrices m = system_matrices(1.0, 1.0, 1.0);
    const Eigen::Matrix3d closed = m.A - m.B * gain.sigma;
    const Eigen::Matrix3d cube = closed * closed * closed;
    CHECK(cube.cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("placed poles come back as closed-loop eigenvalues") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<Real> par(0.05, 3.0);
    std::uniform_real_distribution<Real> pole(-0.9, 0.9);
    for (int trial = 0; trial < 200; ++trial) {
        const Real lambda = par(rng);
        const Real mu = par(rng);
        const Real beta = par(rng);
        std::array<std::complex<Real>, 3> phi = {
            std::complex<Real>(pole(rng), 0.0), std::complex<Real>(pole(rng), 0.0),
            std::complex<Real>(pole(rng), 0.0)};
        const FeedbackGain gain = pole_place(lambda, mu, beta, phi);

        const SystemMatrices m = system_matrices(lambda, mu, beta);
        const Eigen::Vector3d achieved = char_poly_coeffs(m, gain.sigma);
        CHECK((achieved - gain.delta).cwiseAbs().maxCoeff() <= 1e-10);

        // distinct enough poles can be matched one by one
        Eigen::EigenSolver<Eigen::Matrix3d> solver(m.A - m.B * gain.sigma);
        for (const auto& target : phi) {
            Real best = 1e100;
            for (int i = 0; i < 3; ++i)
                best = std::min(best, std::abs(solver.eigenvalues()[i] - target));
            CHECK(best <= 1e-5);
        }
    }
}

TEST_CASE("conjugate pairs place a real gain") {
    const std::array<std::complex<Real>, 3> phi = {std::complex<Real>(0.5, 0.3),
                                                   std::complex<Real>(0.5, -0.3),
                                                   std::complex<Real>(0.2, 0.0)};
    const FeedbackGain gain = pole_place(2.0, 1.0, 0.5, phi);
    CHECK(gain.delta[0] == doctest::Approx(-1.2));
    CHECK(gain.delta[1] == doctest::Approx(0.54));
    CHECK(gain.delta[2] == doctest::Approx(-0.068));
    CHECK(gain.stable);

    const SystemMatrices m = system_matrices(2.0, 1.0, 0.5);
    Eigen::EigenSolver<Eigen::Matrix3d> solver(m.A - m.B * gain.sigma);
    for (const auto& target : phi) {
        Real best = 1e100;
        for (int i = 0; i < 3; ++i)
            best = std::min(best, std::abs(solver.eigenvalues()[i] - target));
        CHECK(best <= 1e-9);
    }
}

TEST_CASE("pole placement rejections") {
    CHECK_THROWS_AS(pole_place(0.0, 1.0, 1.0, kThird), std::domain_error);
    CHECK_THROWS_AS(pole_place(-1.0, 1.0, 1.0, kThird), std::domain_error);
    const std::array<std::complex<Real>, 3> open = {std::complex<Real>(0.5, 0.3),
                                                    std::complex<Real>(0.5, 0.3),
                                                    std::complex<Real>(0.2, 0.0)};
    CHECK_THROWS_AS(pole_place(1.0, 1.0, 1.0, open), std::invalid_argument);
}

TEST_CASE("gain from explicit sigma recovers the pole set") {
    const SystemMatrices m = system_matrices(1.0, 1.0, 1.0);
    const FeedbackGain placed = pole_place(1.0, 1.0, 1.0, kThird);
    const FeedbackGain probed = gain_from_sigma(m, placed.sigma);
    CHECK((probed.delta - placed.delta).cwiseAbs().maxCoeff() <= 1e-12);
    // triple eigenvalue: numerical recovery is only cube-root accurate
    for (const auto& f : probed.phi) CHECK(std::abs(f - kThird[0]) <= 1e-4);
    CHECK(probed.stable);
    CHECK(probed.max_abs_phi == doctest::Approx(1.0 / 3.0).epsilon(1e-4));

    const FeedbackGain wild = gain_from_sigma(m, Eigen::RowVector3d(0.0, 0.0, 0.0));
    CHECK_FALSE(wild.stable);  // open loop keeps the unit pole
}

TEST_CASE("quick response drives the state home") {
    const FeedbackGain gain = pole_place(1.0, 1.0, 1.0, kThird);
    const Real shock[] = {1.0};
    const StabilizationResult res = stabilize_simulation({1.0, 1.0}, 1.0, gain, shock, 40);
    CHECK(res.settled);
    CHECK(res.within_bound);
    CHECK(res.rate_bound == doctest::Approx(1.0 / 3.0 + 0.05));
    CHECK(res.rate_estimate > 0.0);
    CHECK(res.rate_estimate <= res.rate_bound);
    CHECK_FALSE(res.traj.negative_price);
}

TEST_CASE("deadbeat response zeroes the state exactly") {
    const std::array<std::complex<Real>, 3> origin = {};
    const FeedbackGain gain = pole_place(1.0, 1.0, 1.0, origin);
    const Real shock[] = {1.0};
    const StabilizationResult res = stabilize_simulation({1.0, 1.0}, 1.0, gain, shock, 12);
    CHECK(res.settled);
    const Eigen::Vector3d z4 = state_at(res.traj, 4);
    CHECK(z4[0] == 0.0);
    CHECK(z4[1] == 0.0);
    CHECK(z4[2] == 0.0);
    CHECK(res.rate_estimate == 0.0);
}

TEST_CASE("closed loop is linear in the deviation from rest") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<Real> par(0.1, 2.5);
    std::uniform_real_distribution<Real> pole(-0.8, 0.8);
    for (int trial = 0; trial < 50; ++trial) {
        const PricingRule rule{par(rng), par(rng)};
        const Real beta = par(rng);
        const std::array<std::complex<Real>, 3> phi = {
            std::complex<Real>(pole(rng), 0.0), std::complex<Real>(pole(rng), 0.0),
            std::complex<Real>(pole(rng), 0.0)};
        const FeedbackGain gain = pole_place(rule, beta, phi);
        const Real shock[] = {1.0};
        const StabilizationResult res = stabilize_simulation(rule, beta, gain, shock, 12);

        const SystemMatrices m = system_matrices(rule, beta);
        const Eigen::Matrix3d closed = m.A - m.B * gain.sigma;
        for (int n = 1; n < 12; ++n) {
            const Eigen::Vector3d pred = closed * state_at(res.traj, n);
            const Eigen::Vector3d got = state_at(res.traj, n + 1);
            const Real scale = std::max(Real(1), got.cwiseAbs().maxCoeff());
            CHECK((pred - got).cwiseAbs().maxCoeff() <= 1e-9 * scale);
        }
    }
}

TEST_CASE("stabilization guards") {
    const FeedbackGain gain = pole_place(1.0, 1.0, 1.0, kThird);
    const Real shock[] = {1.0};
    CHECK_THROWS_AS(stabilize_simulation({1.0, 1.0}, 1.0, gain, shock, 9),
                    std::invalid_argument);
    const std::array<std::complex<Real>, 3> hot = {std::complex<Real>(1.5, 0.0),
                                                   std::complex<Real>(0.0, 0.0),
                                                   std::complex<Real>(0.0, 0.0)};
    const FeedbackGain unstable = pole_place(1.0, 1.0, 1.0, hot);
    CHECK_FALSE(unstable.stable);
    CHECK_THROWS_AS(stabilize_simulation({1.0, 1.0}, 1.0, unstable, shock, 12),
                    std::invalid_argument);
}

#include "impact/control.hpp"

#include <algorithm>
#include <cmath>

namespace impact {

namespace {

Real max_abs(const std::array<std::complex<Real>, 3>& phi) {
    Real m = 0.0;
    for (const auto& f : phi) m = std::max(m, std::abs(f));
    return m;
}

// Closed under conjugation: the multiset {phi} equals {conj(phi)}.
bool conjugate_closed(const std::array<std::complex<Real>, 3>& phi, Real tol) {
    std::array<bool, 3> used{};
    for (const auto& f : phi) {
        bool matched = false;
        for (int j = 0; j < 3 && !matched; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            if (std::abs(std::conj(f) - phi[static_cast<size_t>(j)]) <= tol) {
                used[static_cast<size_t>(j)] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace

SystemMatrices system_matrices(Real lambda, Real mu, Real beta) {
    SystemMatrices m;
    m.lambda = lambda;
    m.mu = mu;
    m.beta = beta;
    m.A << 1.0, lambda - mu + beta * mu * mu, beta * (lambda - mu) * mu,
           0.0, beta * mu,                    beta * (lambda - mu),
           0.0, 1.0,                          0.0;
    m.B << mu, 1.0, 0.0;
    return m;
}

SystemMatrices system_matrices(const PricingRule& rule, Real beta) {
    validate(rule);
    return system_matrices(rule.lambda, rule.mu, beta);
}

Eigen::Matrix3d controllability_matrix(const SystemMatrices& m) {
    Eigen::Matrix3d w;
    w.col(0) = m.B;
    w.col(1) = m.A * m.B;
    w.col(2) = m.A * w.col(1);
    return w;
}

bool is_controllable(const SystemMatrices& m, Real tol) {
    return std::abs(controllability_matrix(m).determinant()) > tol;
}

Eigen::Vector3d char_poly_coeffs(const SystemMatrices& m, const Eigen::RowVector3d& sigma) {
    const Real bm = m.beta * m.mu;
    const Real bd = m.beta * (m.lambda - m.mu);
    Eigen::Vector3d c;
    c[0] = m.mu * sigma[0] + sigma[1] - bm - 1.0;                          // c2
    c[1] = (m.lambda - m.mu) * sigma[0] - sigma[1] + sigma[2] - bd + bm;   // c1
    c[2] = -sigma[2] + bd;                                                 // c0
    return c;
}

Eigen::Vector3d char_poly_coeffs(const SystemMatrices& m, const FeedbackGain& gain) {
    return char_poly_coeffs(m, gain.sigma);
}

FeedbackGain pole_place(Real lambda, Real mu, Real beta,
                        const std::array<std::complex<Real>, 3>& phi) {
    if (!(lambda > 0.0))
        throw std::domain_error("pole placement needs lambda > 0 (system is uncontrollable otherwise)");
    if (!conjugate_closed(phi, 1e-12))
        throw std::invalid_argument("pole set must be closed under conjugation");

    const std::complex<Real> d1c = -(phi[0] + phi[1] + phi[2]);
    const std::complex<Real> d2c = phi[0] * phi[1] + phi[1] * phi[2] + phi[2] * phi[0];
    const std::complex<Real> d3c = -(phi[0] * phi[1] * phi[2]);
    const Real residue =
        std::max({std::abs(d1c.imag()), std::abs(d2c.imag()), std::abs(d3c.imag())});
    if (residue >= 1e-12)
        throw std::invalid_argument("target polynomial has a complex coefficient");

    FeedbackGain gain;
    gain.phi = phi;
    gain.delta << d1c.real(), d2c.real(), d3c.real();

    const Real sum = 1.0 + gain.delta[0] + gain.delta[1] + gain.delta[2];
    gain.sigma[0] = sum / lambda;
    gain.sigma[1] = -mu * gain.sigma[0] + gain.delta[0] + beta * mu + 1.0;
    gain.sigma[2] = -gain.delta[2] + beta * (lambda - mu);
    gain.max_abs_phi = max_abs(phi);
    gain.stable = gain.max_abs_phi < 1.0;
    return gain;
}

FeedbackGain pole_place(const PricingRule& rule, Real beta,
                        const std::array<std::complex<Real>, 3>& phi) {
    validate(rule);
    return pole_place(rule.lambda, rule.mu, beta, phi);
}

FeedbackGain gain_from_sigma(const SystemMatrices& m, const Eigen::RowVector3d& sigma) {
    FeedbackGain gain;
    gain.sigma = sigma;
    const Eigen::Matrix3d closed = m.A - m.B * sigma;
    const Eigen::EigenSolver<Eigen::Matrix3d> solver(closed);
    for (int i = 0; i < 3; ++i) gain.phi[static_cast<size_t>(i)] = solver.eigenvalues()[i];
    const Eigen::Vector3d c = char_poly_coeffs(m, sigma);
    gain.delta = c;
    gain.max_abs_phi = max_abs(gain.phi);
    gain.stable = gain.max_abs_phi < 1.0;
    return gain;
}

StabilizationResult stabilize_simulation(const PricingRule& rule, Real beta,
                                         const FeedbackGain& gain,
                                         std::span<const Real> disturbance, int N) {
    validate(rule);
    if (N < 10) throw std::invalid_argument("stabilization run needs N >= 10");

    MarketParams params;
    params.beta = beta;
    params.horizon = N;
    const ControlPolicy policy = quick_response_control(gain);

    StabilizationResult result;
    result.traj = simulate(params, rule, disturbance, policy);
    result.rate_bound = gain.max_abs_phi + 0.05;

    const Eigen::Vector3d target(params.p0, 0.0, 0.0);
    std::vector<Real> dist(static_cast<size_t>(N) + 1, 0.0);
    for (int n = 0; n <= N; ++n)
        dist[static_cast<size_t>(n)] = (state_at(result.traj, n) - target).norm();

    // Transients carry polynomial factors, so the ratio is only read late.
    const int late = std::max(5, 2 * N / 3);
    Real rate = 0.0;
    for (int n = late; n < N; ++n) {
        const Real cur = dist[static_cast<size_t>(n)];
        const Real next = dist[static_cast<size_t>(n + 1)];
        if (cur > 1e-300) rate = std::max(rate, next / cur);
    }
    result.rate_estimate = rate;
    result.within_bound = rate <= result.rate_bound;
    result.settled = dist[static_cast<size_t>(N)] <= 1e-10;
    return result;
}

}  // namespace impact

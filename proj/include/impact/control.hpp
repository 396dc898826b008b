// State-space view of the market: controllability and pole placement for the
// state z_n = (p_n, q_n, q_{n-1}).
#ifndef IMPACT_CONTROL_HPP
#define IMPACT_CONTROL_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>

#include "impact/dynamics.hpp"
#include "impact/feedback.hpp"
#include "impact/types.hpp"

namespace impact {

// z_{n+1} = A z_n + B u_{n+1}, controller and speculator orders entering
// through the same input channel B.
struct SystemMatrices {
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Eigen::Vector3d B = Eigen::Vector3d::Zero();
    Real lambda = 0.0;
    Real mu = 0.0;
    Real beta = 0.0;
};

// Raw overload exists so degenerate parameters (lambda = 0) can be probed;
// the rule overload validates first.
SystemMatrices system_matrices(Real lambda, Real mu, Real beta);
SystemMatrices system_matrices(const PricingRule& rule, Real beta);

// W = [B, AB, A^2 B]. det(W) reduces to lambda, so the pair is controllable
// exactly when the quote responds to trade at all.
Eigen::Matrix3d controllability_matrix(const SystemMatrices& m);

bool is_controllable(const SystemMatrices& m, Real tol = 1e-9);

// Coefficients (c2, c1, c0) of det(phi I - (A - B sigma)) =
// phi^3 + c2 phi^2 + c1 phi + c0, expanded as polynomials in sigma.
Eigen::Vector3d char_poly_coeffs(const SystemMatrices& m, const Eigen::RowVector3d& sigma);
Eigen::Vector3d char_poly_coeffs(const SystemMatrices& m, const FeedbackGain& gain);

// Places the closed-loop poles at the given conjugate-closed triple. Throws
// std::domain_error when lambda <= 0 (system not controllable) and
// std::invalid_argument when the triple is not closed under conjugation.
FeedbackGain pole_place(Real lambda, Real mu, Real beta,
                        const std::array<std::complex<Real>, 3>& phi);
FeedbackGain pole_place(const PricingRule& rule, Real beta,
                        const std::array<std::complex<Real>, 3>& phi);

// Gain for an explicitly chosen sigma; poles recovered numerically, only
// used for diagnostics and stability screening of user-supplied gains.
FeedbackGain gain_from_sigma(const SystemMatrices& m, const Eigen::RowVector3d& sigma);

struct StabilizationResult {
    Trajectory traj;
    Real rate_estimate = 0.0;     // sup of late-window norm ratios
    Real rate_bound = 0.0;        // max |phi| + 0.05
    bool within_bound = false;
    bool settled = false;         // state returned to the pre-trade point
};

// Injects the given speculator orders, lets the quick-response policy fight
// them, and measures the decay of ||z_n - z*|| toward the pre-disturbance
// state z* = (p0, 0, 0). N >= 10.
StabilizationResult stabilize_simulation(const PricingRule& rule, Real beta,
                                         const FeedbackGain& gain,
                                         std::span<const Real> disturbance, int N);

}  // namespace impact

#endif

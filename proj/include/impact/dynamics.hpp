// Period-by-period market engine: quote updates, price impact, momentum
// traders and an optional stabilizing controller.
#ifndef IMPACT_DYNAMICS_HPP
#define IMPACT_DYNAMICS_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "impact/feedback.hpp"
#include "impact/types.hpp"

namespace impact {

// One trading period. Invariants: q = y + xi + u, p = quote + mu*q, and the
// next period's quote is quote + lambda*q.
struct PeriodRecord {
    int n = 0;      // 1-based period index
    Real quote = 0.0;
    Real y = 0.0;   // aggregate speculator orders
    Real xi = 0.0;  // momentum-trader orders
    Real u = 0.0;   // controller orders
    Real q = 0.0;   // total order flow
    Real p = 0.0;   // market price
};

struct Trajectory {
    MarketParams params;
    PricingRule rule;
    std::vector<PeriodRecord> records;     // consecutive from n = 1
    bool negative_price = false;           // some p_n < 0 was observed
};

inline Real impact_price(Real quote, Real q, const PricingRule& rule) {
    return quote + rule.mu * q;
}

inline Real update_quote(Real quote, Real q, const PricingRule& rule) {
    return quote + rule.lambda * q;
}

inline Real momentum_order(Real p_prev, Real p_prev2, Real beta) {
    return beta * (p_prev - p_prev2);
}

// Runs the market for params.horizon periods. spec_orders holds the
// aggregate speculator order y_n per period; entries beyond its length are
// zero. Momentum traders are inactive in period 1 and afterwards chase the
// last price change, seeded with p_0 = params.p0. Throws
// std::invalid_argument on invalid or non-finite inputs.
Trajectory simulate(const MarketParams& params, const PricingRule& rule,
                    std::span<const Real> spec_orders,
                    const ControlPolicy& control = ControlPolicy::null());

// Two-period position payoff of a speculator buying x1 in period n and
// unwinding in period n + 1: (p_{n+1} - p_n) * x1. Throws std::out_of_range
// unless both periods exist in the trajectory.
Real speculator_payoff(const Trajectory& traj, int n, Real x1);

// State vector (p_n, q_n, q_{n-1}); n = 0 gives the pre-trade state
// (p0, 0, 0). Throws std::out_of_range for n outside [0, horizon].
Eigen::Vector3d state_at(const Trajectory& traj, int n);

// Re-checks the per-period identities of a finished trajectory against
// params.tol. Returns the index of the first violated record, or 0.
int first_invariant_violation(const Trajectory& traj);

}  // namespace impact

#endif

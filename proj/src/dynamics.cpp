#include "impact/dynamics.hpp"

#include <cmath>
#include <cstdlib>

namespace impact {

ControlPolicy quick_response_control(const FeedbackGain& gain, Real trigger_tol) {
    if (!gain.stable)
        throw std::invalid_argument("quick-response control requires a stable gain (max |phi| < 1)");
    if (!(trigger_tol >= 0.0) || !std::isfinite(trigger_tol))
        throw std::invalid_argument("trigger tolerance must be finite and >= 0");
    ControlPolicy policy;
    policy.kind = ControlPolicy::Kind::QuickResponse;
    policy.gain = gain;
    policy.trigger_tol = trigger_tol;
    return policy;
}

Trajectory simulate(const MarketParams& params, const PricingRule& rule,
                    std::span<const Real> spec_orders, const ControlPolicy& control) {
    validate(params);
    validate(rule);
    for (Real y : spec_orders)
        if (!std::isfinite(y))
            throw std::invalid_argument("speculator orders must be finite");

    Trajectory traj;
    traj.params = params;
    traj.rule = rule;
    traj.records.reserve(static_cast<size_t>(params.horizon));

    const bool feedback = control.kind == ControlPolicy::Kind::QuickResponse;
    const Eigen::RowVector3d sigma = control.gain.sigma;
    bool triggered = false;

    Real quote = params.p0;
    Real p_prev = params.p0;   // p_{n-1}, seeded with p_0
    Real p_prev2 = params.p0;  // p_{n-2}; unused until n >= 2
    Real q_prev = 0.0;         // q_{n-1}
    Real q_prev2 = 0.0;        // q_{n-2}

    for (int n = 1; n <= params.horizon; ++n) {
        PeriodRecord rec;
        rec.n = n;
        rec.quote = quote;
        rec.y = n <= static_cast<int>(spec_orders.size()) ? spec_orders[n - 1] : 0.0;
        rec.xi = n >= 2 ? momentum_order(p_prev, p_prev2, params.beta) : 0.0;
        // Feedback reads the previous state shifted to the pre-trade point
        // (p0, 0, 0); at p0 = 0 this is plain state feedback.
        rec.u = feedback && triggered
                    ? -sigma[0] * (p_prev - params.p0) - sigma[1] * q_prev - sigma[2] * q_prev2
                    : 0.0;
        rec.q = rec.y + rec.xi + rec.u;
        rec.p = impact_price(quote, rec.q, rule);
        if (rec.p < 0.0) traj.negative_price = true;

        quote = update_quote(quote, rec.q, rule);
        p_prev2 = p_prev;
        p_prev = rec.p;
        q_prev2 = q_prev;
        q_prev = rec.q;
        if (std::abs(rec.q) > control.trigger_tol) triggered = true;

        traj.records.push_back(rec);
    }
    return traj;
}

Real speculator_payoff(const Trajectory& traj, int n, Real x1) {
    if (n < 1 || n + 1 > static_cast<int>(traj.records.size()))
        throw std::out_of_range("speculator payoff needs periods n and n+1 inside the trajectory");
    return (traj.records[static_cast<size_t>(n)].p - traj.records[static_cast<size_t>(n - 1)].p) * x1;
}

Eigen::Vector3d state_at(const Trajectory& traj, int n) {
    if (n < 0 || n > static_cast<int>(traj.records.size()))
        throw std::out_of_range("state index outside the simulated range");
    if (n == 0) return {traj.params.p0, 0.0, 0.0};
    const Real q_prev = n >= 2 ? traj.records[static_cast<size_t>(n - 2)].q : 0.0;
    const PeriodRecord& rec = traj.records[static_cast<size_t>(n - 1)];
    return {rec.p, rec.q, q_prev};
}

int first_invariant_violation(const Trajectory& traj) {
    const Real tol = traj.params.tol;
    Real quote = traj.params.p0;
    for (const PeriodRecord& rec : traj.records) {
        if (std::abs(rec.q - (rec.y + rec.xi + rec.u)) > tol) return rec.n;
        if (std::abs(rec.p - (rec.quote + traj.rule.mu * rec.q)) > tol) return rec.n;
        if (std::abs(rec.quote - quote) > tol) return rec.n;
        quote = rec.quote + traj.rule.lambda * rec.q;
    }
    return 0;
}

}  // namespace impact

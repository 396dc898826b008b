// Core parameter types shared by every component.
#ifndef IMPACT_TYPES_HPP
#define IMPACT_TYPES_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace impact {

using Real = double;

// Linear pricing rule: the market price moves mu per unit of contemporaneous
// order flow, the standing quote moves lambda per unit of executed flow.
struct PricingRule {
    Real lambda = 1.0;
    Real mu = 1.0;
};

// Scenario-level knobs. tol is the absolute comparison tolerance used by
// consistency checks on a finished trajectory.
struct MarketParams {
    Real beta = 0.0;
    Real p0 = 0.0;
    int horizon = 20;
    Real tol = 1e-9;
};

inline void validate(const PricingRule& rule) {
    if (!std::isfinite(rule.lambda) || !std::isfinite(rule.mu))
        throw std::invalid_argument("pricing rule must be finite");
    if (rule.lambda <= 0.0 || rule.mu <= 0.0)
        throw std::invalid_argument("pricing rule requires lambda > 0 and mu > 0");
}

inline void validate(const MarketParams& params) {
    if (!std::isfinite(params.beta) || !std::isfinite(params.p0) || !std::isfinite(params.tol))
        throw std::invalid_argument("market params must be finite");
    if (params.beta < 0.0)
        throw std::invalid_argument("momentum coefficient beta must be >= 0");
    if (params.horizon < 1)
        throw std::invalid_argument("horizon must be >= 1");
    if (params.tol < 0.0)
        throw std::invalid_argument("tolerance must be >= 0");
}

}  // namespace impact

#endif

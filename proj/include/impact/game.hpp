// Equilibrium checks for the speculator game: benchmark payoffs, the
// three-period subgame after a lone deviation, and the quick-response
// viability and impossibility certificates.
#ifndef IMPACT_GAME_HPP
#define IMPACT_GAME_HPP

#include <array>
#include <span>
#include <vector>

#include "impact/dynamics.hpp"
#include "impact/feedback.hpp"
#include "impact/types.hpp"

namespace impact {

// A two-period speculator position: buy x1 now, unwind -x1 next period.
struct SpeculatorAction {
    int x1 = 0;  // in {-1, 0, 1}
    int x2() const { return -x1; }
};

// Open-loop profile; speculator n (1-based) plays actions[n-1], everyone
// past the end holds (0, 0).
struct ActionProfile {
    std::vector<SpeculatorAction> actions;
};

// Aggregate speculator order flow y_1..y_periods induced by a profile.
std::vector<Real> order_flow(const ActionProfile& profile, int periods);

// Payoff of the lone N-period speculator in the momentum-free benchmark:
// (2*mu - lambda) * (-1/2) * sum x_n^2 for any zero-sum position path.
// Throws std::invalid_argument unless |sum x| <= 1e-12.
Real benchmark_payoff(const PricingRule& rule, std::span<const Real> x);

// Payoff of a single (1, -1) deviation against the no-trade profile with
// momentum traders present and no controller: beta*mu^2 - 2*mu + lambda.
Real prop2_deviation_payoff(const PricingRule& rule, Real beta);

struct SubgamePayoffs {
    Real pi1 = 0.0;
    Real pi2 = 0.0;
};

// Closed-form first- and second-mover payoffs in the uncontrolled subgame
// opened by speculator 1 trading x1, with followers x2, x3. x1 must be +-1.
SubgamePayoffs subgame_payoffs_no_control(const PricingRule& rule, Real beta,
                                          int x1, int x2, int x3);

// The chain of inequalities behind the sufficiency direction: with l < 0 the
// second mover weakly prefers exiting to rejoining for every continuation
// (strictly unless the tie sits on the x3 = +1 cell that the same argument
// removes one layer deeper), which caps the deviator's payoff at r < 0.
struct SpeCertificate {
    Real l = 0.0;
    Real r = 0.0;
    bool certified = false;
    std::array<Real, 3> rejoin_penalty{};  // pi2(exit) - pi2(rejoin) per x3 = -1,0,1
    std::array<bool, 3> strict{};
    bool ties_only_at_buy_continuation = false;
    Real max_pi1 = 0.0;  // over the continuations x2 in {exit, reverse}
};

SpeCertificate spe_viability_sufficiency_check(const PricingRule& rule, Real beta);

struct DeviationEntry {
    int x1 = 0;
    Real payoff = 0.0;
    bool profitable = false;
};

struct SpeculatorReport {
    int n = 0;
    int x1 = 0;
    Real payoff = 0.0;
    bool truncation_affected = false;
    std::vector<DeviationEntry> deviations;
};

struct PayoffReport {
    int horizon = 0;
    std::vector<SpeculatorReport> speculators;
    bool any_profitable_deviation = false;
};

// One-shot deviation check of an open-loop profile over N speculators.
// Payoffs near the boundary (n >= N - 2) are computed against the pinned
// continuation and flagged accordingly. Ties within tie_tol are reported as
// not profitable.
PayoffReport ne_check_open_loop(const PricingRule& rule, Real beta,
                                const ControlPolicy& policy, int N,
                                const ActionProfile& profile, Real tie_tol = 1e-12);

// All open-loop profiles over N <= 12 speculators that survive the one-shot
// deviation check. Throws std::invalid_argument for larger horizons.
std::vector<ActionProfile> exhaustive_ne_search(const PricingRule& rule, Real beta,
                                                const ControlPolicy& policy, int N,
                                                Real tie_tol = 1e-12);

struct Theorem1Cell {
    int x2 = 0;
    int x3 = 0;
    Real pi1 = 0.0;          // simulated
    Real pi2 = 0.0;          // simulated
    Real pi1_closed = 0.0;   // lambda - 2*mu + mu*x2
    Real pi2_closed = 0.0;
    Real u2 = 0.0;
    Real p2 = 0.0;
    Real xi3 = 0.0;
    Real u3 = 0.0;
    bool spe_admissible = false;  // x2 != +1: rejoining is dominated
};

struct Theorem1Cases {
    FeedbackGain gain;
    std::array<Theorem1Cell, 9> cells{};
    Real max_admissible_pi1 = 0.0;
    bool no_trade_path_flat = false;  // u == 0 when nobody trades
};

// Simulates the deviation subgame under the (1/3, 1/3, 1/3) quick-response
// gain for every follower continuation. Requires lambda <= 2*mu; outside the
// maximal set throws std::domain_error (see theorem1_impossibility_witness).
Theorem1Cases theorem1_payoff_cases(const PricingRule& rule, Real beta);

struct ImpossibilityWitness {
    Real band_lo = 0.0;   // (lambda - 2*mu)/mu - 1
    Real band_hi = 3.0;   // sup of -(phi1 + phi2 + phi3) over stable poles
    bool empty = false;   // band empty <=> mu <= lambda / 6
};

// For lambda > 2*mu: the window of delta1 values that both stabilize and
// keep the deviation unprofitable. Empty window certifies impossibility.
ImpossibilityWitness theorem1_impossibility_witness(const PricingRule& rule, Real beta);

}  // namespace impact

#endif

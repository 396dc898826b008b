// Closed-form treatment of the order-flow recurrence
//   q_{n+2} = K q_{n+1} + J q_n,  (q_0, q_1) = (0, 1),
// which the market follows once momentum traders are the only active side.
#ifndef IMPACT_LINEARDIFF_HPP
#define IMPACT_LINEARDIFF_HPP

#include <optional>

#include "impact/types.hpp"

namespace impact {

struct RecurrenceParams {
    Real K = 0.0;
    Real J = 0.0;
};

enum class RootKind { RealDistinct, Repeated, Complex };

// Roots of r^2 - K r - J = 0. For the complex case the pair is
// modulus * exp(+-i * theta) with theta in (0, pi], modulus = sqrt(-J).
struct RootSpec {
    RootKind kind = RootKind::Repeated;
    Real discriminant = 0.0;  // D = K^2 + 4J
    Real r1 = 0.0;            // real roots, r1 >= r2; repeated root in both
    Real r2 = 0.0;
    Real modulus = 0.0;       // complex case only
    Real theta = 0.0;         // complex case only
};

// Which evaluation route closed_form_q takes for the given parameters.
enum class EvalPath { RealDistinct, Repeated, Complex, RecurrenceFallback };

// |D| <= tol * max(1, K^2) counts as a repeated root.
RootSpec characteristic_roots(const RecurrenceParams& p, Real tol = 1e-12);

// q_n by direct iteration; the reference implementation everything else is
// measured against. n >= 0.
Real recurrence_q(const RecurrenceParams& p, int n);

// q_n from the root formulas. Near the repeated-root boundary the 1/sqrt(D)
// form loses every digit, so |D| < 1e-6 (outside the repeated band) falls
// back to iteration; eval_path reports the route taken.
Real closed_form_q(const RecurrenceParams& p, int n, Real tol = 1e-12);
EvalPath eval_path(const RecurrenceParams& p, Real tol = 1e-12);

// Smallest n in [1, n_max] with q_n < 0, if any. Iterates with periodic
// rescaling, so growing solutions cannot overflow before a sign shows up.
std::optional<int> first_negative_index(const RecurrenceParams& p, int n_max);

struct MonotoneVerdict {
    bool applicable = false;      // D >= 0 and beta > 0
    bool degenerate = false;      // beta == 0: flow dies after one period
    bool monotone = false;        // q_n > 0 and prices strictly rising
    int first_violation = 0;      // earliest offending period, or 0
    Real discriminant = 0.0;      // (beta*mu)^2 + 4*beta*(lambda - mu)
    // For D < 0: a sign change is guaranteed within this many periods.
    std::optional<int> sign_change_bound;
    std::optional<int> sign_change_index;
};

// Checks the lone-buyer cascade (y = 1, 0, 0, ...) for strictly increasing
// prices over n = 1..N. Price increments are tested through the exact
// identity p_{n+1} - p_n = (lambda - mu) q_n + mu q_{n+1}, which keeps the
// strictness decision at order-flow scale instead of price scale.
MonotoneVerdict monotone_price_check(const PricingRule& rule, Real beta, int N);

}  // namespace impact

#endif

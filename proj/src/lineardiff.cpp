#include "impact/lineardiff.hpp"

#include <cmath>
#include <numbers>

namespace impact {

namespace {

// Below this the 1/sqrt(D) split of nearly equal powers has lost too many
// digits to be trusted, so evaluation switches to iteration.
constexpr Real kUnstableBand = 1e-6;

bool repeated_band(const RecurrenceParams& p, Real D, Real tol) {
    return std::abs(D) <= tol * std::max(Real(1), p.K * p.K);
}

}  // namespace

RootSpec characteristic_roots(const RecurrenceParams& p, Real tol) {
    RootSpec spec;
    const Real D = p.K * p.K + 4.0 * p.J;
    spec.discriminant = D;
    if (repeated_band(p, D, tol)) {
        spec.kind = RootKind::Repeated;
        spec.r1 = spec.r2 = p.K / 2.0;
    } else if (D > 0.0) {
        spec.kind = RootKind::RealDistinct;
        const Real root = std::sqrt(D);
        spec.r1 = (p.K + root) / 2.0;
        spec.r2 = (p.K - root) / 2.0;
    } else {
        spec.kind = RootKind::Complex;
        spec.modulus = std::sqrt(-p.J);
        spec.theta = std::atan2(std::sqrt(-D), p.K);  // in (0, pi]
    }
    return spec;
}

Real recurrence_q(const RecurrenceParams& p, int n) {
    if (n < 0) throw std::invalid_argument("index must be >= 0");
    Real prev = 0.0;  // q_0
    Real cur = 1.0;   // q_1
    if (n == 0) return prev;
    for (int i = 1; i < n; ++i) {
        const Real next = p.K * cur + p.J * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

EvalPath eval_path(const RecurrenceParams& p, Real tol) {
    const Real D = p.K * p.K + 4.0 * p.J;
    if (repeated_band(p, D, tol)) return EvalPath::Repeated;
    if (std::abs(D) < kUnstableBand) return EvalPath::RecurrenceFallback;
    return D > 0.0 ? EvalPath::RealDistinct : EvalPath::Complex;
}

Real closed_form_q(const RecurrenceParams& p, int n, Real tol) {
    if (n < 0) throw std::invalid_argument("index must be >= 0");
    switch (eval_path(p, tol)) {
        case EvalPath::Repeated: {
            // q_n = n * (K/2)^(n-1)
            if (n == 0) return 0.0;
            return n * std::pow(p.K / 2.0, n - 1);
        }
        case EvalPath::RecurrenceFallback:
            return recurrence_q(p, n);
        case EvalPath::RealDistinct: {
            const RootSpec spec = characteristic_roots(p, tol);
            const Real root = std::sqrt(spec.discriminant);
            return (std::pow(spec.r1, n) - std::pow(spec.r2, n)) / root;
        }
        case EvalPath::Complex: {
            const RootSpec spec = characteristic_roots(p, tol);
            const Real dprime = -spec.discriminant;
            return 2.0 / std::sqrt(dprime) * std::pow(spec.modulus, n) * std::sin(n * spec.theta);
        }
    }
    return 0.0;  // unreachable
}

std::optional<int> first_negative_index(const RecurrenceParams& p, int n_max) {
    Real prev = 0.0;
    Real cur = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        if (cur < 0.0) return n;
        if (n == n_max) break;
        Real next = p.K * cur + p.J * prev;
        prev = cur;
        cur = next;
        // The recurrence is homogeneous, so rescaling preserves all signs.
        const Real mag = std::max(std::abs(prev), std::abs(cur));
        if (mag > 1e100) {
            prev /= mag;
            cur /= mag;
        }
    }
    return std::nullopt;
}

MonotoneVerdict monotone_price_check(const PricingRule& rule, Real beta, int N) {
    validate(rule);
    if (beta < 0.0 || !std::isfinite(beta)) throw std::invalid_argument("beta must be >= 0");
    if (N < 1) throw std::invalid_argument("N must be >= 1");

    MonotoneVerdict v;
    const RecurrenceParams p{beta * rule.mu, beta * (rule.lambda - rule.mu)};
    v.discriminant = p.K * p.K + 4.0 * p.J;

    if (beta == 0.0) {
        // q = (1, 0, 0, ...): a single price step and then a flat line.
        v.degenerate = true;
        return v;
    }

    if (v.discriminant >= 0.0) {
        v.applicable = true;
        // The lone-impulse flow obeys the recurrence exactly, so iterate it
        // directly. Extracting q from a simulated price path loses the sign
        // once the cascade decays below the rounding noise of the price level.
        v.monotone = true;
        Real prev = 0.0;  // q_0
        Real cur = 1.0;   // q_1
        for (int n = 1; n <= N; ++n) {
            const Real next = p.K * cur + p.J * prev;
            // p_{n+1} - p_n at order-flow scale.
            const Real increment = (rule.lambda - rule.mu) * cur + rule.mu * next;
            if (!(cur > 0.0) || !(increment > 0.0)) {
                v.monotone = false;
                v.first_violation = n;
                break;
            }
            prev = cur;
            cur = next;
            // Homogeneous, so rescaling preserves signs; keep the pair away
            // from overflow and from flushing to zero.
            const Real mag = std::max(std::abs(prev), std::abs(cur));
            if (mag > 1e100 || (mag > 0.0 && mag < 1e-100)) {
                prev /= mag;
                cur /= mag;
            }
        }
        return v;
    }

    // Oscillating regime: bound the first sign change by the rotation angle.
    const RootSpec spec = characteristic_roots(p);
    const int bound = static_cast<int>(std::ceil(2.0 * std::numbers::pi / spec.theta)) + 2;
    v.sign_change_bound = bound;
    v.sign_change_index = first_negative_index(p, bound);
    return v;
}

}  // namespace impact

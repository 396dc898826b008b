#include "impact/game.hpp"

#include <cmath>
#include <limits>

#include "impact/control.hpp"

namespace impact {

namespace {

void check_action(int x1) {
    if (x1 < -1 || x1 > 1) throw std::invalid_argument("speculator actions are -1, 0 or +1");
}

ActionProfile padded(const ActionProfile& profile, int n_speculators) {
    ActionProfile out = profile;
    out.actions.resize(static_cast<size_t>(n_speculators));
    return out;
}

}  // namespace

std::vector<Real> order_flow(const ActionProfile& profile, int periods) {
    if (periods < 1) throw std::invalid_argument("order flow needs at least one period");
    for (const SpeculatorAction& a : profile.actions) check_action(a.x1);
    std::vector<Real> y(static_cast<size_t>(periods), 0.0);
    const int n_spec = static_cast<int>(profile.actions.size());
    for (int n = 1; n <= periods; ++n) {
        Real flow = 0.0;
        if (n <= n_spec) flow += profile.actions[static_cast<size_t>(n - 1)].x1;
        if (n >= 2 && n - 1 <= n_spec) flow += profile.actions[static_cast<size_t>(n - 2)].x2();
        y[static_cast<size_t>(n - 1)] = flow;
    }
    return y;
}

Real benchmark_payoff(const PricingRule& rule, std::span<const Real> x) {
    validate(rule);
    Real sum = 0.0;
    Real sumsq = 0.0;
    for (Real v : x) {
        if (!std::isfinite(v)) throw std::invalid_argument("positions must be finite");
        sum += v;
        sumsq += v * v;
    }
    if (std::abs(sum) > 1e-12)
        throw std::invalid_argument("benchmark payoff is defined for zero-sum position paths");
    return (2.0 * rule.mu - rule.lambda) * (-0.5) * sumsq;
}

Real prop2_deviation_payoff(const PricingRule& rule, Real beta) {
    validate(rule);
    return beta * rule.mu * rule.mu - 2.0 * rule.mu + rule.lambda;
}

SubgamePayoffs subgame_payoffs_no_control(const PricingRule& rule, Real beta,
                                          int x1, int x2, int x3) {
    validate(rule);
    check_action(x1);
    check_action(x2);
    check_action(x3);
    if (x1 == 0) throw std::invalid_argument("the subgame opens with a trade; x1 must be +-1");
    if (x1 == -1) return subgame_payoffs_no_control(rule, beta, 1, -x2, -x3);

    const Real lambda = rule.lambda;
    const Real mu = rule.mu;
    const Real xi2 = beta * mu;
    const Real y2 = -1.0 + x2;
    const Real xi3 = xi2 * xi2 + (y2 - 1.0) * xi2 + beta * lambda;
    const Real y3 = x3 - x2;

    SubgamePayoffs out;
    out.pi1 = mu * (beta * mu + x2 - 1.0) + (lambda - mu);
    // Second mover's round trip prices the move p3 - p2 at its own sign.
    out.pi2 = x2 * ((lambda - mu) * (xi2 + y2) + mu * (xi3 + y3));
    return out;
}

SpeCertificate spe_viability_sufficiency_check(const PricingRule& rule, Real beta) {
    validate(rule);
    if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");

    SpeCertificate cert;
    const Real mu = rule.mu;
    cert.l = beta * mu * mu - 2.0 * mu + 2.0 * rule.lambda;
    cert.r = prop2_deviation_payoff(rule, beta);

    bool penalties_ok = true;
    cert.ties_only_at_buy_continuation = true;
    for (int i = 0; i < 3; ++i) {
        const int x3 = i - 1;
        const Real rejoin = subgame_payoffs_no_control(rule, beta, 1, 1, x3).pi2;
        const Real exit = subgame_payoffs_no_control(rule, beta, 1, 0, x3).pi2;
        cert.rejoin_penalty[static_cast<size_t>(i)] = exit - rejoin;
        cert.strict[static_cast<size_t>(i)] = exit - rejoin > 0.0;
        if (exit - rejoin < 0.0) penalties_ok = false;
        if (!cert.strict[static_cast<size_t>(i)] && x3 != 1)
            cert.ties_only_at_buy_continuation = false;
    }

    const Real pi1_exit = subgame_payoffs_no_control(rule, beta, 1, 0, 0).pi1;
    const Real pi1_reverse = subgame_payoffs_no_control(rule, beta, 1, -1, 0).pi1;
    cert.max_pi1 = std::max(pi1_exit, pi1_reverse);

    cert.certified = cert.l < 0.0 && penalties_ok && cert.ties_only_at_buy_continuation &&
                     cert.max_pi1 < 0.0;
    return cert;
}

PayoffReport ne_check_open_loop(const PricingRule& rule, Real beta,
                                const ControlPolicy& policy, int N,
                                const ActionProfile& profile, Real tie_tol) {
    validate(rule);
    if (N < 1) throw std::invalid_argument("need at least one speculator");
    if (static_cast<int>(profile.actions.size()) > N)
        throw std::invalid_argument("profile longer than the speculator horizon");

    MarketParams params;
    params.beta = beta;
    params.horizon = N + 1;  // period N+1 carries the last unwind

    const ActionProfile base = padded(profile, N);
    const std::vector<Real> y = order_flow(base, N + 1);
    const Trajectory traj = simulate(params, rule, y, policy);

    PayoffReport report;
    report.horizon = N;
    report.speculators.reserve(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n) {
        SpeculatorReport sr;
        sr.n = n;
        sr.x1 = base.actions[static_cast<size_t>(n - 1)].x1;
        sr.payoff = speculator_payoff(traj, n, sr.x1);
        sr.truncation_affected = n >= N - 2;
        for (int alt = -1; alt <= 1; ++alt) {
            if (alt == sr.x1) continue;
            ActionProfile deviated = base;
            deviated.actions[static_cast<size_t>(n - 1)].x1 = alt;
            const Trajectory dev_traj =
                simulate(params, rule, order_flow(deviated, N + 1), policy);
            DeviationEntry entry;
            entry.x1 = alt;
            entry.payoff = speculator_payoff(dev_traj, n, alt);
            entry.profitable = entry.payoff > sr.payoff + tie_tol;
            if (entry.profitable) report.any_profitable_deviation = true;
            sr.deviations.push_back(entry);
        }
        report.speculators.push_back(std::move(sr));
    }
    return report;
}

std::vector<ActionProfile> exhaustive_ne_search(const PricingRule& rule, Real beta,
                                                const ControlPolicy& policy, int N,
                                                Real tie_tol) {
    if (N < 1 || N > 12)
        throw std::invalid_argument("exhaustive search is limited to horizons 1..12");
    std::vector<ActionProfile> found;
    long total = 1;
    for (int i = 0; i < N; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
        ActionProfile profile;
        profile.actions.resize(static_cast<size_t>(N));
        long rest = code;
        for (int n = 0; n < N; ++n) {
            profile.actions[static_cast<size_t>(n)].x1 = static_cast<int>(rest % 3) - 1;
            rest /= 3;
        }
        if (!ne_check_open_loop(rule, beta, policy, N, profile, tie_tol).any_profitable_deviation)
            found.push_back(std::move(profile));
    }
    return found;
}

Theorem1Cases theorem1_payoff_cases(const PricingRule& rule, Real beta) {
    validate(rule);
    if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
    if (!(rule.lambda <= 2.0 * rule.mu))
        throw std::domain_error("outside the maximal set; see theorem1_impossibility_witness");

    Theorem1Cases cases;
    const Real third = 1.0 / 3.0;
    cases.gain = pole_place(rule, beta, {third, third, third});
    const ControlPolicy policy = quick_response_control(cases.gain);

    const Real lambda = rule.lambda;
    const Real mu = rule.mu;
    MarketParams params;
    params.beta = beta;
    params.horizon = 3;

    int idx = 0;
    cases.max_admissible_pi1 = -std::numeric_limits<Real>::infinity();
    for (int x2 = -1; x2 <= 1; ++x2) {
        for (int x3 = -1; x3 <= 1; ++x3) {
            ActionProfile profile;
            profile.actions = {{1}, {x2}, {x3}};
            const Trajectory traj = simulate(params, rule, order_flow(profile, 3), policy);

            Theorem1Cell cell;
            cell.x2 = x2;
            cell.x3 = x3;
            cell.pi1 = speculator_payoff(traj, 1, 1.0);
            cell.pi2 = speculator_payoff(traj, 2, x2);
            cell.u2 = traj.records[1].u;
            cell.p2 = traj.records[1].p;
            cell.xi3 = traj.records[2].xi;
            cell.u3 = traj.records[2].u;
            cell.pi1_closed = lambda - 2.0 * mu + mu * x2;
            if (x2 == 1)
                cell.pi2_closed = mu * (x3 - 4.0 / 3.0);
            else if (x2 == -1)
                cell.pi2_closed = mu * (-x3 - 8.0 / 3.0) + 2.0 * lambda;
            else
                cell.pi2_closed = 0.0;
            cell.spe_admissible = x2 != 1;
            if (cell.spe_admissible)
                cases.max_admissible_pi1 = std::max(cases.max_admissible_pi1, cell.pi1);
            cases.cells[static_cast<size_t>(idx++)] = cell;
        }
    }

    // Dormancy: with nobody trading the controller must not move either.
    MarketParams quiet = params;
    quiet.horizon = 8;
    const Trajectory idle = simulate(quiet, rule, {}, policy);
    cases.no_trade_path_flat = true;
    for (const PeriodRecord& rec : idle.records)
        if (rec.u != 0.0 || rec.q != 0.0 || rec.p != quiet.p0) cases.no_trade_path_flat = false;
    return cases;
}

ImpossibilityWitness theorem1_impossibility_witness(const PricingRule& rule, Real beta) {
    validate(rule);
    if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
    if (!(rule.lambda > 2.0 * rule.mu))
        throw std::domain_error("witness applies outside the maximal set only (lambda > 2*mu)");
    ImpossibilityWitness w;
    w.band_lo = (rule.lambda - 2.0 * rule.mu) / rule.mu - 1.0;
    w.band_hi = 3.0;
    w.empty = w.band_lo >= w.band_hi;
    return w;
}

}  // namespace impact

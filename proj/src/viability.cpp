#include "impact/viability.hpp"

#include <cmath>
#include <stdexcept>

namespace impact {

ViabilityValues viability_values(Real lambda, Real mu, Real beta) {
    if (!std::isfinite(lambda) || !std::isfinite(mu) || !std::isfinite(beta))
        throw std::invalid_argument("viability inputs must be finite");
    if (lambda <= 0.0 || mu <= 0.0)
        throw std::invalid_argument("viability values need lambda > 0 and mu > 0");
    ViabilityValues v;
    const Real bm2 = beta * mu * mu;
    v.r = bm2 - 2.0 * mu + lambda;
    v.d = bm2 - 4.0 * mu + 4.0 * lambda;
    v.l = bm2 - 2.0 * mu + 2.0 * lambda;
    v.maximal_margin = 2.0 * mu - lambda;
    return v;
}

RegionLabel classify(Real lambda, Real mu, Real beta, Real tol) {
    const ViabilityValues v = viability_values(lambda, mu, beta);
    RegionLabel label;
    label.in_m = in_maximal_set(lambda, mu);
    label.in_m1 = v.r <= 0.0;
    label.in_m2 = v.d < 0.0;
    label.in_m3 = v.l < 0.0;
    label.on_kyle_line = std::abs(lambda - mu) <= tol;
    label.on_r_boundary = std::abs(v.r) <= tol;
    label.on_d_boundary = std::abs(v.d) <= tol;
    label.on_l_boundary = std::abs(v.l) <= tol;
    label.on_m_boundary = std::abs(v.maximal_margin) <= tol;
    return label;
}

RegionGrid region_grid(Real beta, std::pair<Real, Real> lambda_range,
                       std::pair<Real, Real> mu_range, int steps) {
    if (steps < 2) throw std::invalid_argument("grid needs at least 2 steps per axis");
    if (beta < 0.0 || !std::isfinite(beta))
        throw std::invalid_argument("grid needs beta >= 0");
    if (!(lambda_range.first > 0.0) || !(lambda_range.second > lambda_range.first))
        throw std::invalid_argument("lambda range must be positive and increasing");
    if (!(mu_range.first > 0.0) || !(mu_range.second > mu_range.first))
        throw std::invalid_argument("mu range must be positive and increasing");

    RegionGrid grid;
    grid.steps = steps;
    grid.cells.reserve(static_cast<size_t>(steps) * static_cast<size_t>(steps));
    const Real dl = (lambda_range.second - lambda_range.first) / (steps - 1);
    const Real dm = (mu_range.second - mu_range.first) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        const Real lambda = lambda_range.first + i * dl;
        for (int j = 0; j < steps; ++j) {
            const Real mu = mu_range.first + j * dm;
            RegionCell cell;
            cell.lambda = lambda;
            cell.mu = mu;
            cell.values = viability_values(lambda, mu, beta);
            cell.label = classify(lambda, mu, beta);
            grid.cells.push_back(cell);
        }
    }
    return grid;
}

}  // namespace impact

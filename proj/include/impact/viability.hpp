// Viability regions in the (lambda, mu) plane for a given momentum level.
#ifndef IMPACT_VIABILITY_HPP
#define IMPACT_VIABILITY_HPP

#include <utility>
#include <vector>

#include "impact/types.hpp"

namespace impact {

// The three boundary polynomials plus the distance to the maximal set.
//   r = beta*mu^2 - 2*mu + lambda       (no-trade equilibrium boundary)
//   d = beta*mu^2 - 4*mu + 4*lambda     (oscillation boundary)
//   l = beta*mu^2 - 2*mu + 2*lambda     (strict viability boundary)
struct ViabilityValues {
    Real r = 0.0;
    Real d = 0.0;
    Real l = 0.0;
    Real maximal_margin = 0.0;  // 2*mu - lambda
};

struct RegionLabel {
    bool in_m = false;    // lambda <= 2*mu
    bool in_m1 = false;   // r <= 0
    bool in_m2 = false;   // d < 0
    bool in_m3 = false;   // l < 0
    bool on_kyle_line = false;  // |lambda - mu| <= tol
    bool on_r_boundary = false;
    bool on_d_boundary = false;
    bool on_l_boundary = false;
    bool on_m_boundary = false;
};

ViabilityValues viability_values(Real lambda, Real mu, Real beta);

// Membership uses the exact weak/strict comparisons; tol only widths the
// "on boundary" annotations.
RegionLabel classify(Real lambda, Real mu, Real beta, Real tol = 1e-12);

inline bool in_maximal_set(Real lambda, Real mu) { return lambda <= 2.0 * mu; }

struct RegionCell {
    Real lambda = 0.0;
    Real mu = 0.0;
    ViabilityValues values;
    RegionLabel label;
};

// Row-major steps x steps sample of [lambda_range] x [mu_range], lambda
// varying over rows, endpoints included.
struct RegionGrid {
    int steps = 0;
    std::vector<RegionCell> cells;
};

RegionGrid region_grid(Real beta, std::pair<Real, Real> lambda_range,
                       std::pair<Real, Real> mu_range, int steps);

}  // namespace impact

#endif

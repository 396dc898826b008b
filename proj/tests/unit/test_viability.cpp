#include <doctest.h>

#include <cmath>
#include <random>

#include "impact/viability.hpp"

using namespace impact;

TEST_CASE("polynomial values at pinned points") {
    const ViabilityValues v = viability_values(1.0, 1.0, 1.0);
    CHECK(v.r == 0.0);
    CHECK(v.d == 1.0);
    CHECK(v.l == 1.0);
    CHECK(v.maximal_margin == 1.0);

    const ViabilityValues w = viability_values(0.4, 1.0, 1.0);
    CHECK(w.r == doctest::Approx(-0.6));
    CHECK(w.d == doctest::Approx(-1.4));
    CHECK(w.l == doctest::Approx(-0.2));
}

TEST_CASE("the three polynomials differ by multiples of lambda") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<Real> par(0.05, 4.0);
    for (int trial = 0; trial < 400; ++trial) {
        const Real lambda = par(rng);
        const Real mu = par(rng);
        const Real beta = par(rng);
        const ViabilityValues v = viability_values(lambda, mu, beta);
        CHECK(v.l - v.r == doctest::Approx(lambda).epsilon(1e-12));
        CHECK(v.d - v.r == doctest::Approx(3.0 * lambda - 2.0 * mu).epsilon(1e-10));
        CHECK(v.r == doctest::Approx(beta * mu * mu - 2.0 * mu + lambda).epsilon(1e-12));
    }
}

TEST_CASE("membership at pinned parameter points") {
    // lambda = mu = beta = 1: on the R boundary and the Kyle line,
    // outside M2 and M3, inside M
    const RegionLabel kyle = classify(1.0, 1.0, 1.0);
    CHECK(kyle.in_m);
    CHECK(kyle.in_m1);
    CHECK_FALSE(kyle.in_m2);
    CHECK_FALSE(kyle.in_m3);
    CHECK(kyle.on_r_boundary);
    CHECK(kyle.on_kyle_line);

    // lambda = mu, beta = 0: D and L land exactly on zero, so the strict
    // regions exclude the point while their boundary flags light up
    const RegionLabel flat = classify(1.0, 1.0, 0.0);
    CHECK(flat.on_kyle_line);
    CHECK(flat.in_m1);
    CHECK_FALSE(flat.in_m2);
    CHECK_FALSE(flat.in_m3);
    CHECK(flat.on_d_boundary);
    CHECK(flat.on_l_boundary);
    CHECK(flat.in_m);

    // beta = 0 with lambda < mu: strictly inside every region
    const RegionLabel deep = classify(0.5, 1.0, 0.0);
    CHECK(deep.in_m1);
    CHECK(deep.in_m2);
    CHECK(deep.in_m3);
    CHECK(deep.in_m);
    CHECK_FALSE(deep.on_kyle_line);

    // strongly tilted rule: outside everything
    const RegionLabel out = classify(3.0, 1.0, 1.0);
    CHECK_FALSE(out.in_m);
    CHECK_FALSE(out.in_m1);
    CHECK_FALSE(out.in_m2);
    CHECK_FALSE(out.in_m3);

    const RegionLabel inside = classify(0.4, 1.0, 1.0);
    CHECK(inside.in_m);
    CHECK(inside.in_m1);
    CHECK(inside.in_m2);
    CHECK(inside.in_m3);
}

TEST_CASE("containments hold across the parameter box") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<Real> par(0.05, 4.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const Real lambda = par(rng);
        const Real mu = par(rng);
        const Real beta = par(rng);
        const RegionLabel lab = classify(lambda, mu, beta);
        if (lab.in_m3) CHECK(lab.in_m1);          // L < 0 forces R < 0
        if (lab.in_m2) CHECK(lambda < 2.0 * mu);  // D < 0 forces lambda < 2 mu
        CHECK(lab.in_m == (lambda <= 2.0 * mu));
        CHECK(in_maximal_set(lambda, mu) == lab.in_m);
    }
}

TEST_CASE("zero momentum makes every region a half plane in lambda") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<Real> par(0.05, 4.0);
    for (int trial = 0; trial < 300; ++trial) {
        const Real lambda = par(rng);
        const Real mu = par(rng);
        const RegionLabel lab = classify(lambda, mu, 0.0);
        CHECK(lab.in_m1 == (lambda <= 2.0 * mu));
        CHECK(lab.in_m2 == (lambda < mu));
        CHECK(lab.in_m3 == (lambda < mu));
    }
}

TEST_CASE("boundary flags honour the tolerance") {
    const RegionLabel near = classify(1.0 + 5e-13, 1.0, 1.0);
    CHECK(near.on_r_boundary);
    const RegionLabel off = classify(1.0 + 1e-6, 1.0, 1.0);
    CHECK_FALSE(off.on_r_boundary);
    const RegionLabel m_edge = classify(2.0, 1.0, 0.3);
    CHECK(m_edge.on_m_boundary);
    CHECK(m_edge.in_m);
}

TEST_CASE("grids enumerate row major with lambda outermost") {
    const RegionGrid grid = region_grid(1.0, {0.5, 1.5}, {0.8, 1.2}, 3);
    REQUIRE(grid.cells.size() == 9u);
    CHECK(grid.steps == 3);
    CHECK(grid.cells[0].lambda == doctest::Approx(0.5));
    CHECK(grid.cells[0].mu == doctest::Approx(0.8));
    CHECK(grid.cells[1].lambda == doctest::Approx(0.5));
    CHECK(grid.cells[1].mu == doctest::Approx(1.0));
    CHECK(grid.cells[3].lambda == doctest::Approx(1.0));
    CHECK(grid.cells[3].mu == doctest::Approx(0.8));
    CHECK(grid.cells[8].lambda == doctest::Approx(1.5));
    CHECK(grid.cells[8].mu == doctest::Approx(1.2));
    for (const RegionCell& cell : grid.cells) {
        const ViabilityValues v = viability_values(cell.lambda, cell.mu, 1.0);
        CHECK(cell.values.r == doctest::Approx(v.r).epsilon(1e-12));
        const RegionLabel lab = classify(cell.lambda, cell.mu, 1.0);
        CHECK(cell.label.in_m1 == lab.in_m1);
        CHECK(cell.label.in_m2 == lab.in_m2);
    }
}

TEST_CASE("grid argument validation") {
    CHECK_THROWS_AS(region_grid(1.0, {0.5, 1.5}, {0.8, 1.2}, 1), std::invalid_argument);
    CHECK_THROWS_AS(region_grid(1.0, {1.5, 0.5}, {0.8, 1.2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(region_grid(1.0, {0.5, 1.5}, {-0.1, 1.2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(region_grid(-1.0, {0.5, 1.5}, {0.8, 1.2}, 3), std::invalid_argument);
}

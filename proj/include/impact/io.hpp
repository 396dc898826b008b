// Plain-text emitters. All numbers are written with 17 significant digits so
// every field re-parses to the exact double that produced it.
#ifndef IMPACT_IO_HPP
#define IMPACT_IO_HPP

#include <string>

#include "impact/control.hpp"
#include "impact/dynamics.hpp"
#include "impact/game.hpp"
#include "impact/viability.hpp"

namespace impact {

std::string format_real(Real v);

// Header: n,quote,y,xi,u,q,p
std::string trajectory_csv(const Trajectory& traj);

// Header: lambda,mu,R,D,L,in_M,in_M1,in_M2,in_M3,on_kyle  (booleans as 0/1)
std::string region_csv(const RegionGrid& grid);

// JSON object with keys A, B, W, detW, sigma, phi, delta plus char-poly
// residuals and the numerically recovered closed-loop eigenvalues.
std::string control_report_json(const SystemMatrices& m, const FeedbackGain& gain);

struct GameReportInputs {
    PricingRule rule;
    Real beta = 0.0;
    const Theorem1Cases* theorem1 = nullptr;             // lambda <= 2*mu side
    const ImpossibilityWitness* witness = nullptr;       // lambda > 2*mu side
    const SpeCertificate* certificate = nullptr;
    const PayoffReport* ne_report = nullptr;
};

// JSON report: the nine-cell closed-form table, and whichever certificates
// and equilibrium checks were computed for these parameters.
std::string game_report_json(const GameReportInputs& in);

void write_file(const std::string& path, const std::string& content);

}  // namespace impact

#endif

// Scenario configuration shared by the command-line frontend and its tests:
// a flat key = value file, flag overrides, and the four runnable reports.
#ifndef IMPACT_SCENARIO_HPP
#define IMPACT_SCENARIO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "impact/types.hpp"

namespace impact {

enum class ControlKind { Null, QuickResponse };

struct ScenarioConfig {
    Real lambda = 1.0;
    Real mu = 1.0;
    Real beta = 0.0;
    Real p0 = 0.0;
    int horizon = 20;
    Real tol = 1e-9;

    ControlKind control = ControlKind::Null;
    std::vector<Real> phi_re{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::vector<Real> phi_im{0.0, 0.0, 0.0};
    std::optional<std::vector<Real>> sigma;  // explicit gain overrides phi
    Real trigger_tol = 1e-9;

    std::string profile = "none";  // none | all_buy_sell | explicit
    std::vector<int> actions;      // x1 per speculator when profile = explicit

    Real lambda_min = 0.01, lambda_max = 3.0;
    Real mu_min = 0.01, mu_max = 3.0;
    int steps = 300;

    std::string out;  // output path; empty = stdout
};

// Thrown for malformed files, unknown keys and out-of-domain values; the
// frontend maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Signals |value| > 1e15 somewhere in a produced table; exit code 3.
struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base = {});
ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base = {});

// Comma-separated pole list; each entry is a real or "re:im".
void set_phi_from_string(ScenarioConfig& cfg, const std::string& s);

// Each runner returns the full report as a string (CSV or JSON).
std::string run_simulate(const ScenarioConfig& cfg);
std::string run_region(const ScenarioConfig& cfg);
std::string run_control_report(const ScenarioConfig& cfg);
std::string run_game_check(const ScenarioConfig& cfg);

}  // namespace impact

#endif

// impactctl: simulate the impact market, map viability regions, report
// controller designs and run the equilibrium checks from the command line.
#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "impact/io.hpp"
#include "impact/scenario.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    double lambda = 0, mu = 0, beta = 0, p0 = 0, tol = 0, trigger_tol = 0;
    int horizon = 0, steps = 0;
    double lambda_min = 0, lambda_max = 0, mu_min = 0, mu_max = 0;
    std::string control, profile, phi, sigma, actions;
};

// Shared flag set; which of them matter depends on the subcommand.
void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "key = value config file");
    cmd->add_option("--out", f.out, "output path (default: stdout)");
    cmd->add_option("--lambda", f.lambda, "quote impact per unit of flow");
    cmd->add_option("--mu", f.mu, "price impact per unit of flow");
    cmd->add_option("--beta", f.beta, "momentum coefficient");
    cmd->add_option("--p0", f.p0, "initial price");
    cmd->add_option("--horizon", f.horizon, "number of periods / speculators");
    cmd->add_option("--tol", f.tol, "trajectory identity tolerance");
    cmd->add_option("--trigger-tol", f.trigger_tol, "controller wake-up threshold");
    cmd->add_option("--control", f.control, "null | quick_response");
    cmd->add_option("--phi", f.phi, "three poles: re or re:im, comma separated");
    cmd->add_option("--sigma", f.sigma, "explicit gain s1,s2,s3 (overrides --phi)");
    cmd->add_option("--profile", f.profile, "none | all_buy_sell | explicit");
    cmd->add_option("--actions", f.actions, "x1 per speculator, e.g. 1,-1,0");
    cmd->add_option("--lambda-min", f.lambda_min, "region grid lambda lower bound");
    cmd->add_option("--lambda-max", f.lambda_max, "region grid lambda upper bound");
    cmd->add_option("--mu-min", f.mu_min, "region grid mu lower bound");
    cmd->add_option("--mu-max", f.mu_max, "region grid mu upper bound");
    cmd->add_option("--steps", f.steps, "region grid points per axis");
}

impact::ScenarioConfig build_config(const CLI::App* cmd, const Flags& f) {
    impact::ScenarioConfig cfg;
    if (!f.config.empty()) cfg = impact::load_config_file(f.config, cfg);

    const auto given = [cmd](const std::string& name) { return cmd->count(name) > 0; };
    if (given("--lambda")) cfg.lambda = f.lambda;
    if (given("--mu")) cfg.mu = f.mu;
    if (given("--beta")) cfg.beta = f.beta;
    if (given("--p0")) cfg.p0 = f.p0;
    if (given("--horizon")) cfg.horizon = f.horizon;
    if (given("--tol")) cfg.tol = f.tol;
    if (given("--trigger-tol")) cfg.trigger_tol = f.trigger_tol;
    if (given("--control")) {
        if (f.control == "null") cfg.control = impact::ControlKind::Null;
        else if (f.control == "quick_response") cfg.control = impact::ControlKind::QuickResponse;
        else throw impact::ConfigError("control must be 'null' or 'quick_response'");
    }
    if (given("--phi")) impact::set_phi_from_string(cfg, f.phi);
    if (given("--sigma")) {
        impact::ScenarioConfig tmp = impact::parse_config_text("sigma = " + f.sigma);
        cfg.sigma = tmp.sigma;
    }
    if (given("--profile")) cfg.profile = f.profile;
    if (given("--actions")) {
        impact::ScenarioConfig tmp = impact::parse_config_text("actions = " + f.actions);
        cfg.actions = tmp.actions;
        if (!given("--profile") && cfg.profile == "none") cfg.profile = "explicit";
    }
    if (given("--lambda-min")) cfg.lambda_min = f.lambda_min;
    if (given("--lambda-max")) cfg.lambda_max = f.lambda_max;
    if (given("--mu-min")) cfg.mu_min = f.mu_min;
    if (given("--mu-max")) cfg.mu_max = f.mu_max;
    if (given("--steps")) cfg.steps = f.steps;
    if (given("--out")) cfg.out = f.out;
    return cfg;
}

void emit(const impact::ScenarioConfig& cfg, const std::string& report) {
    if (cfg.out.empty()) {
        std::fwrite(report.data(), 1, report.size(), stdout);
    } else {
        impact::write_file(cfg.out, report);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear price-impact market: simulation, viability and control"};
    app.require_subcommand(1);

    Flags flags;
    CLI::App* sim = app.add_subcommand("simulate", "run the market and emit a trajectory CSV");
    CLI::App* region = app.add_subcommand("region", "emit the viability region grid CSV");
    CLI::App* control = app.add_subcommand("control", "emit the controller design JSON");
    CLI::App* game = app.add_subcommand("game", "emit the equilibrium check JSON");
    for (CLI::App* cmd : {sim, region, control, game}) add_common(cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            const impact::ScenarioConfig cfg = build_config(sim, flags);
            emit(cfg, impact::run_simulate(cfg));
        } else if (region->parsed()) {
            const impact::ScenarioConfig cfg = build_config(region, flags);
            emit(cfg, impact::run_region(cfg));
        } else if (control->parsed()) {
            const impact::ScenarioConfig cfg = build_config(control, flags);
            emit(cfg, impact::run_control_report(cfg));
        } else if (game->parsed()) {
            const impact::ScenarioConfig cfg = build_config(game, flags);
            emit(cfg, impact::run_game_check(cfg));
        }
    } catch (const impact::OverflowError& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return 3;
    } catch (const impact::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

#include "impact/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "impact/control.hpp"
#include "impact/game.hpp"
#include "impact/io.hpp"
#include "impact/viability.hpp"

namespace impact {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

Real parse_real(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const Real parsed = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(parsed))
        throw ConfigError("key '" + key + "': not a finite number: '" + value + "'");
    return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const long parsed = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError("key '" + key + "': not an integer: '" + value + "'");
    return static_cast<int>(parsed);
}

std::vector<Real> parse_real_list(const std::string& key, const std::string& value) {
    std::vector<Real> out;
    for (const std::string& tok : split(value, ',')) out.push_back(parse_real(key, tok));
    return out;
}

PricingRule rule_of(const ScenarioConfig& cfg) {
    if (!(cfg.lambda > 0.0) || !(cfg.mu > 0.0))
        throw ConfigError("lambda and mu must be positive");
    return {cfg.lambda, cfg.mu};
}

void check_common(const ScenarioConfig& cfg) {
    if (cfg.beta < 0.0 || !std::isfinite(cfg.beta)) throw ConfigError("beta must be >= 0");
    if (cfg.horizon < 1) throw ConfigError("horizon must be >= 1");
    if (cfg.tol < 0.0) throw ConfigError("tol must be >= 0");
    if (cfg.trigger_tol < 0.0) throw ConfigError("trigger_tol must be >= 0");
}

std::array<std::complex<Real>, 3> phi_of(const ScenarioConfig& cfg) {
    if (cfg.phi_re.size() != 3 || cfg.phi_im.size() != 3)
        throw ConfigError("phi needs exactly three poles");
    return {std::complex<Real>(cfg.phi_re[0], cfg.phi_im[0]),
            std::complex<Real>(cfg.phi_re[1], cfg.phi_im[1]),
            std::complex<Real>(cfg.phi_re[2], cfg.phi_im[2])};
}

FeedbackGain gain_of(const ScenarioConfig& cfg) {
    const PricingRule rule = rule_of(cfg);
    if (cfg.sigma) {
        if (cfg.sigma->size() != 3) throw ConfigError("sigma needs exactly three entries");
        Eigen::RowVector3d s((*cfg.sigma)[0], (*cfg.sigma)[1], (*cfg.sigma)[2]);
        return gain_from_sigma(system_matrices(rule, cfg.beta), s);
    }
    try {
        return pole_place(rule, cfg.beta, phi_of(cfg));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ControlPolicy policy_of(const ScenarioConfig& cfg) {
    if (cfg.control == ControlKind::Null) return ControlPolicy::null();
    const FeedbackGain gain = gain_of(cfg);
    if (!gain.stable)
        throw ConfigError("quick_response control needs a stable gain (max |phi| < 1)");
    return quick_response_control(gain, cfg.trigger_tol);
}

ActionProfile profile_of(const ScenarioConfig& cfg, int n_speculators) {
    ActionProfile profile;
    if (cfg.profile == "none") {
        profile.actions.resize(static_cast<size_t>(n_speculators));
    } else if (cfg.profile == "all_buy_sell") {
        profile.actions.assign(static_cast<size_t>(n_speculators), SpeculatorAction{1});
    } else if (cfg.profile == "explicit") {
        if (cfg.actions.empty()) throw ConfigError("profile 'explicit' needs an actions list");
        for (int a : cfg.actions) {
            if (a < -1 || a > 1) throw ConfigError("actions entries must be -1, 0 or 1");
            profile.actions.push_back(SpeculatorAction{a});
        }
        if (static_cast<int>(profile.actions.size()) > n_speculators)
            profile.actions.resize(static_cast<size_t>(n_speculators));
    } else {
        throw ConfigError("unknown profile '" + cfg.profile + "'");
    }
    return profile;
}

}  // namespace

void set_phi_from_string(ScenarioConfig& cfg, const std::string& s) {
    const std::vector<std::string> parts = split(s, ',');
    if (parts.size() != 3) throw ConfigError("phi needs exactly three comma-separated poles");
    cfg.phi_re.assign(3, 0.0);
    cfg.phi_im.assign(3, 0.0);
    for (size_t i = 0; i < 3; ++i) {
        const std::vector<std::string> pair = split(parts[i], ':');
        if (pair.size() == 1) {
            cfg.phi_re[i] = parse_real("phi", pair[0]);
        } else if (pair.size() == 2) {
            cfg.phi_re[i] = parse_real("phi", pair[0]);
            cfg.phi_im[i] = parse_real("phi", pair[1]);
        } else {
            throw ConfigError("phi entries are 're' or 're:im'");
        }
    }
}

ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "lambda") base.lambda = parse_real(key, value);
        else if (key == "mu") base.mu = parse_real(key, value);
        else if (key == "beta") base.beta = parse_real(key, value);
        else if (key == "p0") base.p0 = parse_real(key, value);
        else if (key == "horizon") base.horizon = parse_int(key, value);
        else if (key == "tol") base.tol = parse_real(key, value);
        else if (key == "trigger_tol") base.trigger_tol = parse_real(key, value);
        else if (key == "control") {
            if (value == "null") base.control = ControlKind::Null;
            else if (value == "quick_response") base.control = ControlKind::QuickResponse;
            else throw ConfigError("control must be 'null' or 'quick_response'");
        }
        else if (key == "phi") set_phi_from_string(base, value);
        else if (key == "sigma") {
            const std::vector<Real> s = parse_real_list(key, value);
            if (s.size() != 3) throw ConfigError("sigma needs exactly three entries");
            base.sigma = s;
        }
        else if (key == "profile") base.profile = value;
        else if (key == "actions") {
            base.actions.clear();
            for (const std::string& tok : split(value, ','))
                base.actions.push_back(parse_int(key, tok));
        }
        else if (key == "lambda_min") base.lambda_min = parse_real(key, value);
        else if (key == "lambda_max") base.lambda_max = parse_real(key, value);
        else if (key == "mu_min") base.mu_min = parse_real(key, value);
        else if (key == "mu_max") base.mu_max = parse_real(key, value);
        else if (key == "steps") base.steps = parse_int(key, value);
        else if (key == "out") base.out = value;
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return base;
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), std::move(base));
}

std::string run_simulate(const ScenarioConfig& cfg) {
    check_common(cfg);
    const PricingRule rule = rule_of(cfg);
    MarketParams params{cfg.beta, cfg.p0, cfg.horizon, cfg.tol};
    const ActionProfile profile = profile_of(cfg, cfg.horizon);
    const std::vector<Real> y = order_flow(profile, cfg.horizon);
    const Trajectory traj = simulate(params, rule, y, policy_of(cfg));

    for (const PeriodRecord& rec : traj.records)
        for (Real v : {rec.quote, rec.y, rec.xi, rec.u, rec.q, rec.p})
            if (std::abs(v) > 1e15)
                throw OverflowError("trajectory value exceeded 1e15 in period " +
                                    std::to_string(rec.n));
    if (const int bad = first_invariant_violation(traj))
        throw std::logic_error("trajectory identity violated in period " + std::to_string(bad));
    return trajectory_csv(traj);
}

std::string run_region(const ScenarioConfig& cfg) {
    if (cfg.steps < 2) throw ConfigError("steps must be >= 2");
    if (!(cfg.lambda_min > 0.0) || !(cfg.lambda_max > cfg.lambda_min))
        throw ConfigError("lambda range must be positive and increasing");
    if (!(cfg.mu_min > 0.0) || !(cfg.mu_max > cfg.mu_min))
        throw ConfigError("mu range must be positive and increasing");
    if (cfg.beta < 0.0) throw ConfigError("beta must be >= 0");
    const RegionGrid grid = region_grid(cfg.beta, {cfg.lambda_min, cfg.lambda_max},
                                        {cfg.mu_min, cfg.mu_max}, cfg.steps);
    return region_csv(grid);
}

std::string run_control_report(const ScenarioConfig& cfg) {
    check_common(cfg);
    const PricingRule rule = rule_of(cfg);
    const SystemMatrices m = system_matrices(rule, cfg.beta);
    return control_report_json(m, gain_of(cfg));
}

std::string run_game_check(const ScenarioConfig& cfg) {
    check_common(cfg);
    const PricingRule rule = rule_of(cfg);

    GameReportInputs in;
    in.rule = rule;
    in.beta = cfg.beta;

    const SpeCertificate cert = spe_viability_sufficiency_check(rule, cfg.beta);
    in.certificate = &cert;

    Theorem1Cases theorem1;
    ImpossibilityWitness witness;
    if (in_maximal_set(rule.lambda, rule.mu)) {
        theorem1 = theorem1_payoff_cases(rule, cfg.beta);
        in.theorem1 = &theorem1;
    } else {
        witness = theorem1_impossibility_witness(rule, cfg.beta);
        in.witness = &witness;
    }

    const ActionProfile profile = profile_of(cfg, cfg.horizon);
    const PayoffReport report =
        ne_check_open_loop(rule, cfg.beta, policy_of(cfg), cfg.horizon, profile);
    in.ne_report = &report;

    return game_report_json(in);
}

}  // namespace impact

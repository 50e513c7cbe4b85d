#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "racoop/optimize.hpp"
#include "racoop/simulate.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Problems with how the tool was invoked (flags, scenario syntax) exit
// with 2; values that fail model validation exit with 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Scenario {
    std::optional<double> power, snr_db;
    double beta = 0.5, gamma = 2.0, sigma = 0.002;
    std::optional<double> tau, t_f, t_n, t_r;
    racoop::OptSettings opt;
    double snr_db_min = -20.0, snr_db_max = 30.0, snr_db_step = 1.0;
    double beta_min = 0.05, beta_max = 0.95, beta_step = 0.05;
    long n_phases = 1'000'000;
    std::uint64_t seed = 1;
    racoop::CollisionModel model = racoop::CollisionModel::Literal;
    std::optional<std::string> scheme;
    std::vector<std::string> schemes;
};

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw UsageError("scenario key '" + key + "' must be a number");
    return v.get<double>();
}

long as_integer(const json& v, const std::string& key) {
    if (!v.is_number_integer())
        throw UsageError("scenario key '" + key + "' must be an integer");
    return v.get<long>();
}

std::string as_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw UsageError("scenario key '" + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open scenario file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("scenario parse error: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("scenario must be a flat JSON object");
    Scenario sc;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        if (k == "power") sc.power = as_number(v, k);
        else if (k == "snr_db") sc.snr_db = as_number(v, k);
        else if (k == "beta") sc.beta = as_number(v, k);
        else if (k == "gamma") sc.gamma = as_number(v, k);
        else if (k == "sigma") sc.sigma = as_number(v, k);
        else if (k == "tau") sc.tau = as_number(v, k);
        else if (k == "t_f") sc.t_f = as_number(v, k);
        else if (k == "t_n") sc.t_n = as_number(v, k);
        else if (k == "t_r") sc.t_r = as_number(v, k);
        else if (k == "tau_grid_points") sc.opt.tau_grid_points = static_cast<int>(as_integer(v, k));
        else if (k == "simplex_step") sc.opt.simplex_step = as_number(v, k);
        else if (k == "refine_iters") sc.opt.refine_iters = static_cast<int>(as_integer(v, k));
        else if (k == "refine_shrink") sc.opt.refine_shrink = as_number(v, k);
        else if (k == "min_step") sc.opt.min_step = as_number(v, k);
        else if (k == "snr_db_min") sc.snr_db_min = as_number(v, k);
        else if (k == "snr_db_max") sc.snr_db_max = as_number(v, k);
        else if (k == "snr_db_step") sc.snr_db_step = as_number(v, k);
        else if (k == "beta_min") sc.beta_min = as_number(v, k);
        else if (k == "beta_max") sc.beta_max = as_number(v, k);
        else if (k == "beta_step") sc.beta_step = as_number(v, k);
        else if (k == "n_phases") sc.n_phases = as_integer(v, k);
        else if (k == "seed") sc.seed = static_cast<std::uint64_t>(as_integer(v, k));
        else if (k == "collision_model") {
            std::string m = as_string(v, k);
            if (m == "literal") sc.model = racoop::CollisionModel::Literal;
            else if (m == "refined") sc.model = racoop::CollisionModel::Refined;
            else throw UsageError("collision_model must be 'literal' or 'refined', got '" + m + "'");
        } else if (k == "scheme") {
            sc.scheme = as_string(v, k);
        } else if (k == "schemes") {
            if (v.is_string()) {
                sc.schemes = split_csv(v.get<std::string>());
            } else if (v.is_array()) {
                for (const json& e : v) sc.schemes.push_back(as_string(e, k));
            } else {
                throw UsageError("scenario key 'schemes' must be a string or an array of strings");
            }
        } else {
            throw UsageError("unknown scenario key: " + k);
        }
    }
    if (sc.power && sc.snr_db)
        throw UsageError("scenario sets both power and snr_db; use only one");
    return sc;
}

const std::vector<std::pair<racoop::Scheme, const char*>> kSchemeNames = {
    {racoop::Scheme::DirectLink, "direct-link"},
    {racoop::Scheme::TwoHop, "two-hop"},
    {racoop::Scheme::NaiveDecodeForward, "naive-decode-forward"},
    {racoop::Scheme::DecodeIdleForward, "decode-idle-forward"},
    {racoop::Scheme::DecodeStraightforward, "decode-straightforward"},
};

racoop::Scheme parse_scheme(const std::string& name) {
    for (const auto& [s, n] : kSchemeNames)
        if (name == n) return s;
    throw UsageError("unknown scheme: " + name);
}

std::string scheme_name(racoop::Scheme s) {
    for (const auto& [sc, n] : kSchemeNames)
        if (sc == s) return n;
    return "?";
}

std::string column_name(racoop::Scheme s) {
    std::string n = scheme_name(s);
    for (char& c : n)
        if (c == '-') c = '_';
    return n;
}

racoop::MacScheme parse_mac_scheme(const std::string& name) {
    if (name == "direct-access") return racoop::MacScheme::DirectAccess;
    if (name == "naive-df") return racoop::MacScheme::NaiveDF;
    if (name == "idle-forward") return racoop::MacScheme::IdleForward;
    if (name == "straightforward") return racoop::MacScheme::Straightforward;
    // Protocol names map onto their contention pattern for convenience.
    return racoop::mac_scheme_for(parse_scheme(name));
}

std::string mac_scheme_name(racoop::MacScheme m) {
    switch (m) {
        case racoop::MacScheme::DirectAccess: return "direct-access";
        case racoop::MacScheme::NaiveDF: return "naive-df";
        case racoop::MacScheme::IdleForward: return "idle-forward";
        case racoop::MacScheme::Straightforward: return "straightforward";
    }
    return "?";
}

struct Flags {
    std::string scenario;
    std::string scheme;
    std::string out;
    std::optional<double> beta, snr_db, sigma, gamma;
    std::optional<long> n_phases;
    std::optional<std::uint64_t> seed;
    double perturb_sf = 0.0;
};

racoop::NetworkConfig make_config(const Scenario& sc, const Flags& fl) {
    double power = 1.0;
    if (sc.power) power = *sc.power;
    if (sc.snr_db) power = std::pow(10.0, *sc.snr_db / 10.0);
    if (fl.snr_db) power = std::pow(10.0, *fl.snr_db / 10.0);
    return racoop::NetworkConfig(power, fl.beta.value_or(sc.beta), fl.gamma.value_or(sc.gamma),
                                 fl.sigma.value_or(sc.sigma));
}

racoop::MacParams make_params(const Scenario& sc) {
    if (!sc.tau || !sc.t_f || !sc.t_n)
        throw UsageError("scenario must set tau, t_f and t_n for this command");
    double t_r = sc.t_r ? *sc.t_r : 1.0 - *sc.t_f - *sc.t_n;
    if (std::fabs(t_r) < 1e-12) t_r = 0.0;
    return racoop::MacParams(*sc.t_f, *sc.t_n, t_r, *sc.tau);
}

void write_output(const std::string& out, const std::string& content) {
    if (out.empty()) {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file: " + out);
    f << content;
}

ordered_json params_json(const racoop::MacParams& p) {
    return {{"tau", p.tau}, {"t_f", p.t_f}, {"t_n", p.t_n}, {"t_r", p.t_r}};
}

ordered_json shares_json(const racoop::TimeShares& sh) {
    return {{"s_f", sh.succ_f}, {"s_n", sh.succ_n}, {"s_r", sh.succ_r},
            {"t_F", sh.tx_f},   {"t_N", sh.tx_n},   {"t_i", sh.idle},
            {"t_c", sh.coll}};
}

int run_eval(const Flags& fl) {
    Scenario sc = fl.scenario.empty() ? Scenario{} : load_scenario(fl.scenario);
    std::string name = !fl.scheme.empty() ? fl.scheme
                       : sc.scheme ? *sc.scheme
                                   : throw UsageError("eval needs a scheme (--scheme or scenario)");
    racoop::Scheme scheme = parse_scheme(name);
    racoop::NetworkConfig cfg = make_config(sc, fl);
    racoop::MacParams params = make_params(sc);
    racoop::RateResult r = racoop::evaluate(scheme, cfg, params, sc.model);
    ordered_json out{
        {"scheme", scheme_name(scheme)},
        {"config", ordered_json{{"power", cfg.power},
                                {"beta", cfg.beta},
                                {"gamma", cfg.gamma},
                                {"sigma", cfg.sigma}}},
        {"params", params_json(params)},
        {"shares", shares_json(r.shares)},
        {"rates", ordered_json{{"c_f", r.c_f}, {"c_n", r.c_n}, {"min_rate", r.min_rate}}},
    };
    write_output(fl.out, out.dump(2) + "\n");
    return 0;
}

std::vector<racoop::Scheme> select_schemes(const Scenario& sc) {
    if (sc.schemes.empty()) {
        std::vector<racoop::Scheme> all;
        for (const auto& [s, n] : kSchemeNames) all.push_back(s);
        return all;
    }
    std::vector<racoop::Scheme> chosen;
    for (const std::string& n : sc.schemes) parse_scheme(n);  // validate all names
    for (const auto& [s, n] : kSchemeNames) {
        for (const std::string& want : sc.schemes)
            if (want == n) {
                chosen.push_back(s);
                break;
            }
    }
    return chosen;
}

bool cooperative(racoop::Scheme s) {
    return s != racoop::Scheme::DirectLink && s != racoop::Scheme::TwoHop;
}

int run_sweep(const Flags& fl, bool beta_axis) {
    Scenario sc = fl.scenario.empty() ? Scenario{} : load_scenario(fl.scenario);
    std::vector<racoop::Scheme> schemes = select_schemes(sc);

    double lo = beta_axis ? sc.beta_min : sc.snr_db_min;
    double hi = beta_axis ? sc.beta_max : sc.snr_db_max;
    double step = beta_axis ? sc.beta_step : sc.snr_db_step;
    if (!(step > 0.0) || hi < lo) throw UsageError("sweep range is empty or has non-positive step");
    int n_steps = static_cast<int>(std::floor((hi - lo) / step + 1e-9));

    std::ostringstream os;
    os << (beta_axis ? "beta" : "snr_db");
    for (racoop::Scheme s : schemes) os << ',' << column_name(s);
    os << ",c_nocoop";
    for (racoop::Scheme s : schemes)
        if (cooperative(s)) os << ",improvement_" << column_name(s);
    os << '\n';

    for (int i = 0; i <= n_steps; ++i) {
        double v = lo + i * step;
        double power, beta;
        if (beta_axis) {
            beta = v;
            power = 1.0;
            if (sc.power) power = *sc.power;
            if (sc.snr_db) power = std::pow(10.0, *sc.snr_db / 10.0);
            if (fl.snr_db) power = std::pow(10.0, *fl.snr_db / 10.0);
        } else {
            power = std::pow(10.0, v / 10.0);
            beta = fl.beta.value_or(sc.beta);
        }
        racoop::NetworkConfig cfg(power, beta, fl.gamma.value_or(sc.gamma),
                                  fl.sigma.value_or(sc.sigma));

        double direct = racoop::maximize(racoop::Scheme::DirectLink, cfg, sc.opt, sc.model).best_rate;
        double two_hop = racoop::maximize(racoop::Scheme::TwoHop, cfg, sc.opt, sc.model).best_rate;
        double nocoop = std::max(direct, two_hop);

        os << fmt12(v);
        std::vector<double> coop_rates;
        for (racoop::Scheme s : schemes) {
            double rate;
            if (s == racoop::Scheme::DirectLink) rate = direct;
            else if (s == racoop::Scheme::TwoHop) rate = two_hop;
            else rate = racoop::maximize(s, cfg, sc.opt, sc.model).best_rate;
            if (cooperative(s)) coop_rates.push_back(rate);
            os << ',' << fmt12(rate);
        }
        os << ',' << fmt12(nocoop);
        for (double r : coop_rates) os << ',' << fmt12(100.0 * (r - nocoop) / nocoop);
        os << '\n';
    }
    write_output(fl.out, os.str());
    return 0;
}

int run_simulate(const Flags& fl) {
    Scenario sc = fl.scenario.empty() ? Scenario{} : load_scenario(fl.scenario);
    std::string name = !fl.scheme.empty() ? fl.scheme
                       : sc.scheme ? *sc.scheme
                                   : throw UsageError("simulate needs a scheme (--scheme or scenario)");
    racoop::MacScheme scheme = parse_mac_scheme(name);
    racoop::MacParams params = make_params(sc);
    double sigma = fl.sigma.value_or(sc.sigma);

    racoop::SimConfig cfg{scheme, params, sigma, fl.n_phases.value_or(sc.n_phases),
                          fl.seed.value_or(sc.seed), sc.model};
    racoop::SimStats stats = racoop::simulate(cfg);

    racoop::TimeShares analytic = racoop::shares_for(scheme, params, sigma, sc.model);
    if (fl.perturb_sf != 0.0) analytic.succ_f *= 1.0 + fl.perturb_sf / 100.0;
    racoop::ChainSpec chain = racoop::build_chain(scheme, params, sigma, sc.model);
    double pi2 = chain.states.size() == 2 ? racoop::stationary(chain).second : -1.0;
    racoop::CompareReport rep = racoop::compare(stats, analytic, pi2);

    ordered_json rows = ordered_json::array();
    for (const racoop::CompareRow& r : rep.rows)
        rows.push_back(ordered_json{{"name", r.name},
                                    {"analytic", r.analytic},
                                    {"empirical", r.empirical},
                                    {"se", r.se},
                                    {"z", r.z},
                                    {"pass", r.pass}});
    ordered_json out{
        {"scheme", mac_scheme_name(scheme)},
        {"sigma", sigma},
        {"n_phases", stats.n_phases},
        {"seed", static_cast<std::uint64_t>(fl.seed.value_or(sc.seed))},
        {"params", params_json(params)},
        {"perturb_sf_percent", fl.perturb_sf},
        {"rows", rows},
        {"pass", rep.pass},
    };
    write_output(fl.out, out.dump(2) + "\n");
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Max-min throughput analysis for a three-node random-access relay network"};
    app.require_subcommand(1);

    Flags fl;

    CLI::App* eval = app.add_subcommand(
        "eval", "Rates of one scheme at fixed MAC parameters (JSON)");
    eval->add_option("--scenario", fl.scenario, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--scheme", fl.scheme, "Scheme to evaluate");
    eval->add_option("--beta", fl.beta, "Relay position override");
    eval->add_option("--snr-db", fl.snr_db, "SNR override in dB");
    eval->add_option("--sigma", fl.sigma, "Idle-slot duration override");
    eval->add_option("--gamma", fl.gamma, "Path-loss exponent override");
    eval->add_option("--out", fl.out, "Write output to file instead of stdout");

    CLI::App* sweep_snr = app.add_subcommand(
        "sweep-snr", "Optimized rates and cooperative gains across SNR (CSV)");
    sweep_snr->add_option("--scenario", fl.scenario, "Scenario JSON file")->check(CLI::ExistingFile);
    sweep_snr->add_option("--beta", fl.beta, "Relay position override");
    sweep_snr->add_option("--sigma", fl.sigma, "Idle-slot duration override");
    sweep_snr->add_option("--gamma", fl.gamma, "Path-loss exponent override");
    sweep_snr->add_option("--out", fl.out, "Write output to file instead of stdout");

    CLI::App* sweep_beta = app.add_subcommand(
        "sweep-beta", "Optimized rates and cooperative gains across relay positions (CSV)");
    sweep_beta->add_option("--scenario", fl.scenario, "Scenario JSON file")->check(CLI::ExistingFile);
    sweep_beta->add_option("--snr-db", fl.snr_db, "Fixed SNR in dB (default 0)");
    sweep_beta->add_option("--sigma", fl.sigma, "Idle-slot duration override");
    sweep_beta->add_option("--gamma", fl.gamma, "Path-loss exponent override");
    sweep_beta->add_option("--out", fl.out, "Write output to file instead of stdout");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo phase simulation vs analytic shares (JSON)");
    simulate->add_option("--scenario", fl.scenario, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    simulate->add_option("--scheme", fl.scheme, "Contention scheme to simulate");
    simulate->add_option("--seed", fl.seed, "RNG seed override");
    simulate->add_option("--n-phases", fl.n_phases, "Number of simulated phases");
    simulate->add_option("--sigma", fl.sigma, "Idle-slot duration override");
    simulate->add_option("--perturb-sf", fl.perturb_sf,
                         "Scale the analytic s_f reference by this percentage (test hook)");
    simulate->add_option("--out", fl.out, "Write output to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return run_eval(fl);
        if (sweep_snr->parsed()) return run_sweep(fl, false);
        if (sweep_beta->parsed()) return run_sweep(fl, true);
        if (simulate->parsed()) return run_simulate(fl);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    }
    return 2;
}

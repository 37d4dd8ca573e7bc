#include "ncqm/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using nlohmann::json;

namespace {

struct Flags {
    std::optional<double> theta, B, e, m, hbar, c, T, h, lambda, curlyB, Bbar, a;
    std::optional<int> n_max, k, N;
    std::optional<long long> seed;
    std::optional<std::string> out, format, gauge, branch, prescription, mode, potential, x0;
    std::string config;
};

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noncommutative quantum mechanics scenario runner"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(0, 1);
    Flags f;
    app.add_option("--config", f.config, "JSON scenario file; flags override its fields");
    app.add_option("--theta", f.theta, "coordinate noncommutativity");
    app.add_option("--B", f.B, "momentum noncommutativity (magnetic field)");
    app.add_option("--e", f.e, "charge");
    app.add_option("--m", f.m, "mass");
    app.add_option("--hbar", f.hbar);
    app.add_option("--c", f.c);
    app.add_option("--n-max", f.n_max, "Fock truncation per mode");
    app.add_option("--k", f.k, "number of levels");
    app.add_option("--N", f.N, "highest Landau level for projectors");
    app.add_option("--T", f.T, "trajectory length");
    app.add_option("--h", f.h, "integrator step");
    app.add_option("--lambda", f.lambda, "potential strength");
    app.add_option("--curlyB", f.curlyB, "commutative magnetic field");
    app.add_option("--Bbar", f.Bbar, "theta-independent star-product field");
    app.add_option("--a", f.a, "symmetric-gauge scale");
    app.add_option("--branch", f.branch)->check(CLI::IsMember({"plus", "minus"}));
    app.add_option("--gauge", f.gauge)->check(CLI::IsMember({"symmetric", "landau"}));
    app.add_option("--prescription", f.prescription)->check(CLI::IsMember({"weyl", "normal", "antinormal"}));
    app.add_option("--mode", f.mode, "peierls mode")->check(CLI::IsMember({"commutators", "spectrum"}));
    app.add_option("--potential", f.potential, "JSON list of [i, j, coefficient] terms");
    app.add_option("--x0", f.x0, "JSON list [x1, x2, p1, p2]");
    app.add_option("--out", f.out, "output directory");
    app.add_option("--format", f.format)->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", f.seed);

    const char* commands[] = {"spectrum", "star", "sw", "trajectory", "peierls", "check-algebra"};
    for (auto* name : commands) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    json cfg = json::object();
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) {
            std::cerr << "error: cannot read config file " << f.config << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            cfg = json::parse(ss.str());
        } catch (const json::parse_error& e) {
            std::cerr << "error: " << f.config << ": not valid JSON (" << e.what() << ")\n";
            return 2;
        }
        if (!cfg.is_object()) {
            std::cerr << "error: " << f.config << ": expected a JSON object\n";
            return 2;
        }
    }
    for (auto* sub : app.get_subcommands()) cfg["command"] = sub->get_name();
    put(cfg, "theta", f.theta);
    put(cfg, "B", f.B);
    put(cfg, "e", f.e);
    put(cfg, "m", f.m);
    put(cfg, "hbar", f.hbar);
    put(cfg, "c", f.c);
    put(cfg, "n_max", f.n_max);
    put(cfg, "k", f.k);
    put(cfg, "N", f.N);
    put(cfg, "T", f.T);
    put(cfg, "h", f.h);
    put(cfg, "lambda", f.lambda);
    put(cfg, "curlyB", f.curlyB);
    put(cfg, "Bbar", f.Bbar);
    put(cfg, "a", f.a);
    put(cfg, "branch", f.branch);
    put(cfg, "gauge", f.gauge);
    put(cfg, "prescription", f.prescription);
    put(cfg, "mode", f.mode);
    put(cfg, "out", f.out);
    put(cfg, "format", f.format);
    put(cfg, "seed", f.seed);
    for (auto [key, text] : {std::pair{"potential", &f.potential}, std::pair{"x0", &f.x0}}) {
        if (!*text) continue;
        try {
            cfg[key] = json::parse(**text);
        } catch (const json::parse_error&) {
            std::cerr << "error: --" << key << " is not valid JSON\n";
            return 2;
        }
    }

    ncqm::ScenarioConfig sc;
    try {
        sc = ncqm::validate_config(cfg);
    } catch (const ncqm::ConfigError& e) {
        for (auto& item : e.items()) std::cerr << "config error: " << item << "\n";
        return 2;
    }

    ncqm::RunOutcome r = ncqm::run_scenario(sc);
    for (auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    if (r.exit_code != 0) {
        std::cerr << "error: " << r.message << "\n";
        return r.exit_code;
    }
    for (auto& path : r.files) std::cout << path << "\n";
    return 0;
}

#pragma once

#include "ncqm/errors.hpp"
#include "ncqm/nc_core.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncqm {

// Itemized configuration errors; what() joins them one per line.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> items);
    const std::vector<std::string>& items() const { return items_; }

private:
    std::vector<std::string> items_;
};

struct ScenarioConfig {
    std::string command;  // spectrum | star | sw | trajectory | peierls | check-algebra
    NCParams params;
    int n_max = 30;
    int k = 5;
    std::string gauge = "symmetric";
    double T = 10.0;
    double h = 1e-3;
    int N = 2;
    // terms (i, j, c) meaning c x1^i x2^j
    std::vector<std::array<double, 3>> potential;
    double lambda = 1.0;
    std::optional<double> curlyB;
    std::optional<double> Bbar;
    double a = 1.0;
    std::string branch = "plus";
    std::array<double, 4> x0{0, 0, 1, 0};
    std::string prescription = "antinormal";
    std::string mode = "commutators";  // peierls: commutators | spectrum
    long long seed = 0;
    std::string format = "csv";
    std::string out = ".";
};

// Strict: unknown keys, wrong types, non-finite numbers and bad enum values are
// all reported together.
ScenarioConfig validate_config(const nlohmann::json& raw);
ScenarioConfig validate_config(const std::string& text);

nlohmann::json config_to_json(const ScenarioConfig& c);

Poly potential_poly(const ScenarioConfig& c);

struct RunOutcome {
    int exit_code = 0;
    std::string message;
    std::vector<std::string> warnings;
    std::vector<std::string> files;
};

// Runs the command and writes <command>.<format> plus manifest.json into c.out.
// Exit codes: 0 ok, 1 internal failure, 2 configuration error, 3 domain error.
RunOutcome run_scenario(const ScenarioConfig& c);

int exit_code_for(ErrorCode code);

} // namespace ncqm

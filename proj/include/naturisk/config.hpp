#pragma once

#include <filesystem>
#include <string_view>

namespace naturisk {

// Business-as-usual scenario parameters. Defaults reproduce the published
// calibration; any field can be overridden from a key=value file.
struct ScenarioConfig {
    int t0 = 2022;                      // base year (valuation date: end of t0)
    int horizon = 2050;                 // scenario horizon T
    double temp_threshold = 3.0;        // deg C of warming treated as full pressure
    double pop_growth_threshold = 0.5;  // population growth fraction treated as full pressure
    double damage_steepness = 10.0;     // logistic steepness of the damage curve
    double damage_midpoint = 0.5;       // logistic midpoint of the damage curve
    double pi_tipping = 0.289;          // share of remaining nature impaired by a tipping event
    double wacc = 0.0726;               // discount rate
    double growth_g = 0.0259;           // cash-flow growth rate
    double cf_base = 5.0;               // cash-flow scale, CF_t = cf_base*(1+g)^t

    int n_years() const { return horizon - t0; }

    // Throws ConfigError when a field is out of its documented range.
    void validate() const;
};

ScenarioConfig parse_scenario_config(std::string_view text, const std::string& origin = "<memory>");
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

} // namespace naturisk

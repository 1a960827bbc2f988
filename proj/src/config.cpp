#include "naturisk/config.hpp"

#include "naturisk/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace naturisk {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_num(std::string_view v, const std::string& key, const std::string& origin) {
    double out;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        raise(Errc::config_error, origin + ": key '" + key + "' has non-numeric value '" + std::string(v) + "'");
    return out;
}

int parse_int(std::string_view v, const std::string& key, const std::string& origin) {
    int out;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        raise(Errc::config_error, origin + ": key '" + key + "' has non-integer value '" + std::string(v) + "'");
    return out;
}

} // namespace

void ScenarioConfig::validate() const {
    auto fail = [](const std::string& msg) { raise(Errc::config_error, msg); };
    if (t0 >= horizon)
        fail("t0 must precede horizon");
    if (t0 < 1950 || horizon > 2100)
        fail("scenario years must lie within [1950, 2100]");
    if (temp_threshold <= 0)
        fail("temp_threshold must be positive");
    if (pop_growth_threshold <= 0)
        fail("pop_growth_threshold must be positive");
    if (damage_steepness <= 0)
        fail("damage_steepness must be positive");
    if (damage_midpoint <= 0 || damage_midpoint >= 1)
        fail("damage_midpoint must lie in (0, 1)");
    if (pi_tipping < 0 || pi_tipping > 1)
        fail("pi_tipping must lie in [0, 1]");
    if (wacc <= growth_g)
        fail("wacc must exceed growth_g");
    if (cf_base <= 0)
        fail("cf_base must be positive");
}

ScenarioConfig parse_scenario_config(std::string_view text, const std::string& origin) {
    ScenarioConfig cfg;
    std::string line;
    std::istringstream in{std::string(text)};
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#')
            continue;
        auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            raise(Errc::config_error, origin + ": line " + std::to_string(lineno) + " is not 'key = value'");
        std::string key{trim(sv.substr(0, eq))};
        std::string_view val = trim(sv.substr(eq + 1));

        if (key == "t0")
            cfg.t0 = parse_int(val, key, origin);
        else if (key == "horizon")
            cfg.horizon = parse_int(val, key, origin);
        else if (key == "temp_threshold")
            cfg.temp_threshold = parse_num(val, key, origin);
        else if (key == "pop_growth_threshold")
            cfg.pop_growth_threshold = parse_num(val, key, origin);
        else if (key == "damage_steepness")
            cfg.damage_steepness = parse_num(val, key, origin);
        else if (key == "damage_midpoint")
            cfg.damage_midpoint = parse_num(val, key, origin);
        else if (key == "pi_tipping")
            cfg.pi_tipping = parse_num(val, key, origin);
        else if (key == "wacc")
            cfg.wacc = parse_num(val, key, origin);
        else if (key == "growth_g")
            cfg.growth_g = parse_num(val, key, origin);
        else if (key == "cf_base")
            cfg.cf_base = parse_num(val, key, origin);
        else
            raise(Errc::config_error, origin + ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(Errc::missing_file, path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_config(buf.str(), path.filename().string());
}

} // namespace naturisk

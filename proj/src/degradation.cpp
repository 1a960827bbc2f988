#include "naturisk/degradation.hpp"

#include "naturisk/errors.hpp"
#include "naturisk/kernels.hpp"
#include "naturisk/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace naturisk {

namespace {

constexpr size_t npos = std::numeric_limits<size_t>::max();

std::string series_key(HazardKind kind, RegionScope scope, const std::string& code) {
    return std::string(hazard_kind_name(kind)) + "|" + region_scope_name(scope) + "|" + code;
}

void check_unit_interval(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
        raise(Errc::domain_error, std::string(what) + " must lie in [0, 1]");
}

} // namespace

double DegradationSeries::cdi_at(int year) const {
    int idx = year - first_year;
    if (idx < 0 || idx >= static_cast<int>(cdi.size()))
        raise(Errc::year_out_of_range, iso3 + ": no CDI for year " + std::to_string(year));
    return cdi[static_cast<size_t>(idx)];
}

double cumulative_pressure(const ProjectedHazardPath& path, int upto_year) {
    int idx = upto_year - path.first_year;
    if (idx < 0 || idx >= static_cast<int>(path.values.size()))
        raise(Errc::year_out_of_range,
              "year " + std::to_string(upto_year) + " outside the projected path");
    if (path.is_pressure_level)
        return path.values[static_cast<size_t>(idx)];
    double sum = 0.0;
    for (int i = 0; i <= idx; ++i)
        sum += path.values[static_cast<size_t>(i)];
    return 1.0 - std::exp(-sum);
}

double damage(double ep, const ScenarioConfig& cfg) {
    return math::damage(ep, cfg.damage_steepness, cfg.damage_midpoint);
}

double mean_damage(std::span<const double> damages) {
    if (damages.empty())
        raise(Errc::empty_input, "mean damage of zero hazards");
    double sum = 0.0;
    for (double d : damages)
        sum += d;
    return math::clamp01(sum / static_cast<double>(damages.size()));
}

double tipping_probability(double dbar) {
    check_unit_interval(dbar, "mean damage");
    return math::tipping_probability(dbar);
}

double tipping_damage(double dbar, double pi) {
    check_unit_interval(dbar, "mean damage");
    check_unit_interval(pi, "tipping impairment share");
    return math::tipping_damage(dbar, pi);
}

double country_degradation_index(double dbar, double p, double dtp) {
    check_unit_interval(dbar, "mean damage");
    check_unit_interval(p, "tipping probability");
    check_unit_interval(dtp, "tipping damage");
    return math::degradation_index(dbar, p, dtp);
}

DegradationSeries cdi_series(const std::string& iso3, std::span<const ProjectedHazardPath> paths,
                             const ScenarioConfig& cfg) {
    if (paths.empty())
        raise(Errc::no_hazard_data, iso3 + ": no resolvable hazard paths");

    const size_t years = static_cast<size_t>(cfg.horizon - cfg.t0);
    for (const auto& p : paths)
        if (p.first_year != cfg.t0 + 1 || p.values.size() != years)
            raise(Errc::year_out_of_range, iso3 + ": hazard path does not span the scenario years");

    const auto& k = kernels::ops();

    std::vector<double> sum_d(years, 0.0);
    std::vector<double> ep(years), dmg(years);
    for (const auto& path : paths) {
        if (path.is_pressure_level) {
            std::copy(path.values.begin(), path.values.end(), ep.begin());
        } else {
            double run = 0.0;
            for (size_t t = 0; t < years; ++t) {
                run += path.values[t];
                ep[t] = run;
            }
            k.one_minus_exp_neg(ep.data(), ep.data(), years);
        }
        k.damage_curve(ep.data(), dmg.data(), years, cfg.damage_steepness, cfg.damage_midpoint);
        k.axpy(1.0, dmg.data(), sum_d.data(), years);
    }

    DegradationSeries out;
    out.iso3 = iso3;
    out.first_year = cfg.t0 + 1;
    out.hazards_used = static_cast<int>(paths.size());
    out.mean_damage.resize(years);
    out.tipping_prob.resize(years);
    out.tipping_damage.resize(years);
    out.cdi.resize(years);

    const double inv_n = 1.0 / static_cast<double>(paths.size());
    for (size_t t = 0; t < years; ++t)
        out.mean_damage[t] = math::clamp01(sum_d[t] * inv_n);
    k.tipping_chain(out.mean_damage.data(), out.tipping_prob.data(), out.tipping_damage.data(),
                    out.cdi.data(), years, cfg.pi_tipping);
    return out;
}

std::vector<double> region_aggregate(std::span<const DegradationSeries> series,
                                     std::span<const double> land_areas) {
    if (series.empty())
        raise(Errc::empty_region, "aggregate over zero countries");
    if (series.size() != land_areas.size())
        raise(Errc::domain_error, "series/land size mismatch");

    const size_t years = series.front().cdi.size();
    std::vector<double> acc(years, 0.0);
    double total_land = 0.0;
    const auto& k = kernels::ops();
    for (size_t i = 0; i < series.size(); ++i) {
        if (series[i].cdi.size() != years || series[i].first_year != series.front().first_year)
            raise(Errc::domain_error, "aggregate members span different years");
        k.axpy(land_areas[i], series[i].cdi.data(), acc.data(), years);
        total_land += land_areas[i];
    }
    if (!(total_land > 0))
        raise(Errc::empty_region, "aggregate has zero land area");
    for (double& v : acc)
        v /= total_land;
    return acc;
}

const ProjectedHazardPath* ProjectionTable::find(HazardKind kind, RegionScope scope,
                                                 const std::string& code) const {
    auto it = index.find(series_key(kind, scope, code));
    return it == index.end() ? nullptr : &paths[it->second];
}

const ProjectedHazardPath* ProjectionTable::find_global(HazardKind kind) const {
    size_t i = global_by_kind[static_cast<size_t>(kind)];
    return i == npos ? nullptr : &paths[i];
}

ProjectionTable project_all(const Dataset& ds, const ScenarioConfig& cfg) {
    ProjectionTable table;
    table.global_by_kind.assign(kHazardKindCount, npos);
    for (const auto& series : collect_series(ds)) {
        ProjectedHazardPath path = project_hazard(series, cfg);
        size_t pos = table.paths.size();
        table.index[series_key(series.kind, series.scope, series.region_code)] = pos;
        if (series.scope == RegionScope::global)
            table.global_by_kind[static_cast<size_t>(series.kind)] = pos;
        table.paths.push_back(std::move(path));
    }
    return table;
}

namespace {

const ProjectedHazardPath* direct_lookup(const ProjectionTable& table, HazardKind kind,
                                         const CountryMeta& c) {
    if (const auto* p = table.find(kind, RegionScope::country, c.iso3))
        return p;
    if (const auto* p = table.find(kind, RegionScope::subregion, c.m49_subregion))
        return p;
    if (const auto* p = table.find(kind, RegionScope::subregion, c.iucn_region))
        return p;
    if (const auto* p = table.find(kind, RegionScope::continent, c.continent))
        return p;
    return table.find_global(kind);
}

} // namespace

ResolvedHazards resolve_hazards(const Dataset& ds, const CountryMeta& country,
                                const ProjectionTable& table, const ScenarioConfig& cfg) {
    ResolvedHazards out;
    const size_t years = static_cast<size_t>(cfg.horizon - cfg.t0);
    for (int ki = 0; ki < kHazardKindCount; ++ki) {
        const auto kind = static_cast<HazardKind>(ki);
        if (const auto* p = direct_lookup(table, kind, country)) {
            out.paths.push_back(*p);
            continue;
        }
        // Continent peers with a direct series, averaged by land area.
        std::vector<double> acc(years, 0.0);
        double land = 0.0;
        bool pressure_form = false;
        for (const auto& peer : ds.countries) {
            if (peer.iso3 == country.iso3 || peer.continent != country.continent)
                continue;
            const auto* p = direct_lookup(table, kind, peer);
            if (!p)
                continue;
            kernels::ops().axpy(peer.land_area_km2, p->values.data(), acc.data(), years);
            land += peer.land_area_km2;
            pressure_form = p->is_pressure_level;
        }
        if (land > 0) {
            ProjectedHazardPath avg;
            avg.kind = kind;
            avg.region_code = country.continent + "(avg)";
            avg.method = default_method(kind);
            avg.is_pressure_level = pressure_form;
            avg.first_year = cfg.t0 + 1;
            avg.values = std::move(acc);
            for (double& v : avg.values)
                v /= land;
            out.paths.push_back(std::move(avg));
            out.warnings.push_back(country.iso3 + ": no " + hazard_kind_name(kind) +
                                   " series; using the " + country.continent +
                                   " land-weighted average");
        } else {
            out.warnings.push_back(country.iso3 + ": no " + hazard_kind_name(kind) +
                                   " series resolvable; hazard excluded from the mean");
        }
    }
    return out;
}

} // namespace naturisk

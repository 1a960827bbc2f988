#pragma once

#include "naturisk/config.hpp"
#include "naturisk/dataset.hpp"
#include "naturisk/projection.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace naturisk {

// Per-country yearly damage decomposition, years t0+1..T.
struct DegradationSeries {
    std::string iso3;
    int first_year = 0;
    std::vector<double> mean_damage;    // clamped to [0, 1]
    std::vector<double> tipping_prob;
    std::vector<double> tipping_damage;
    std::vector<double> cdi;
    int hazards_used = 0;               // count of resolvable hazards (n in the mean)

    double cdi_at(int year) const;
};

// --- scalar operations ----------------------------------------------------

// Cumulative pressure at upto_year: intensity paths integrate the loss rate
// (EP = 1 - exp(-sum lambda)); pressure paths read the level directly.
// Negative sums (recovering nature) pass through unclamped.
double cumulative_pressure(const ProjectedHazardPath& path, int upto_year);

double damage(double ep, const ScenarioConfig& cfg);

// Arithmetic mean clamped to [0, 1]; recovery can pull raw means negative
// but everything downstream of the mean works on the published 0-1 scale.
double mean_damage(std::span<const double> damages);

double tipping_probability(double dbar);
double tipping_damage(double dbar, double pi);
double country_degradation_index(double dbar, double p, double dtp);

// --- series operations -----------------------------------------------------

// Applies the damage chain year by year over the resolved hazard paths.
DegradationSeries cdi_series(const std::string& iso3,
                             std::span<const ProjectedHazardPath> paths,
                             const ScenarioConfig& cfg);

// Land-weighted CDI aggregate across member series.
std::vector<double> region_aggregate(std::span<const DegradationSeries> series,
                                     std::span<const double> land_areas);

// --- hazard resolution ------------------------------------------------------

// Paths projected per (kind, scope, code) from the raw observations.
struct ProjectionTable {
    std::vector<ProjectedHazardPath> paths;       // aligned with keys
    std::map<std::string, size_t> index;          // "kind|scope|code" -> position
    std::vector<size_t> global_by_kind;           // kHazardKindCount entries, npos when absent

    const ProjectedHazardPath* find(HazardKind kind, RegionScope scope, const std::string& code) const;
    const ProjectedHazardPath* find_global(HazardKind kind) const;
};

ProjectionTable project_all(const Dataset& ds, const ScenarioConfig& cfg);

struct ResolvedHazards {
    std::vector<ProjectedHazardPath> paths; // one per resolvable hazard kind
    std::vector<std::string> warnings;      // fallback notes
};

// Scope fallback per Table-1 granularities: country -> M49 subregion ->
// biodiversity region -> continent -> global. A hazard with no series at
// any scope falls back to the land-weighted average path of the country's
// continent peers; failing that it is dropped and n shrinks.
ResolvedHazards resolve_hazards(const Dataset& ds, const CountryMeta& country,
                                const ProjectionTable& table, const ScenarioConfig& cfg);

} // namespace naturisk

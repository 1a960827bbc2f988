#pragma once

#include "naturisk/errors.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace naturisk {

enum class HazardKind {
    biodiversity,
    land_degradation,
    global_warming,
    population,
    natural_capital,
};
inline constexpr int kHazardKindCount = 5;

const char* hazard_kind_name(HazardKind k);
std::optional<HazardKind> parse_hazard_kind(std::string_view token);

enum class RegionScope { global, continent, subregion, country };
const char* region_scope_name(RegionScope s);
std::optional<RegionScope> parse_region_scope(std::string_view token);

enum class Rating { none, very_low, low, medium, high, very_high };
// case-insensitive; throws UnknownRating
Rating parse_rating(std::string_view token);
const char* rating_name(Rating r);

// Revenue bucket for turnover not allocated to any modelled country. Scored
// against the world land-weighted degradation aggregate.
inline constexpr const char* kRestOfWorld = "REST_OF_WORLD";

struct CountryMeta {
    std::string iso3;
    std::string name;
    std::string m49_subregion;
    std::string continent;
    std::string iucn_region;
    double land_area_km2 = 0.0;
    double gdp_usd = 0.0;

    auto operator<=>(const CountryMeta&) const = default;
};

struct HazardObservation {
    HazardKind kind{};
    RegionScope scope{};
    std::string region_code;
    int year = 0;
    double value = 0.0;

    auto operator<=>(const HazardObservation&) const = default;
};

struct FirmRecord {
    std::string firm_id;
    std::string name;
    std::string nace4;
    double volatility = 0.0;
    double leverage = 0.0;
    std::string sector_group; // derived from nace4, one of the 31 industry codes

    auto operator<=>(const FirmRecord&) const = default;
};

struct RevenueBreakdown {
    std::string firm_id;
    std::string region_code; // iso3, declared aggregate, or REST_OF_WORLD
    double revenue = 0.0;

    auto operator<=>(const RevenueBreakdown&) const = default;
};

struct DependencyEntry {
    std::string production_process;
    std::string ecosystem_service;
    Rating rating{};

    auto operator<=>(const DependencyEntry&) const = default;
};

struct CrosswalkEntry {
    std::string nace4;
    std::string production_process;

    auto operator<=>(const CrosswalkEntry&) const = default;
};

struct Dataset {
    std::vector<CountryMeta> countries;       // sorted by iso3
    std::vector<HazardObservation> hazards;   // sorted by (kind, scope, code, year)
    std::vector<FirmRecord> firms;            // sorted by firm_id
    std::vector<RevenueBreakdown> revenues;   // sorted by (firm_id, region_code)
    std::vector<DependencyEntry> dependencies;
    std::vector<CrosswalkEntry> crosswalk;    // deduplicated, sorted
    std::map<std::string, std::vector<std::string>> aggregates; // code -> member iso3s, sorted

    const CountryMeta* find_country(std::string_view iso3) const;
    bool operator==(const Dataset&) const = default;
};

struct ValidationIssue {
    enum class Severity { warning, error };
    Severity severity{};
    std::string table;
    std::string message;
    Errc code = Errc::schema_violation;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    size_t error_count() const;
    size_t warning_count() const;
    std::map<std::string, size_t> errors_by_table() const;
};

// Parses the six schema files (plus the optional region_aggregates.csv)
// without enforcing semantic invariants. Field types and enums must parse.
Dataset load_dataset_raw(const std::filesystem::path& data_dir);

// Semantic checks: ranges, uniqueness, referential integrity, and hazard
// coverage (countries needing a fallback series are reported as warnings).
ValidationReport validate_dataset(const Dataset& ds);

// load_dataset_raw + validate; throws on the first reported error.
Dataset load_dataset(const std::filesystem::path& data_dir);

// Writes the dataset back out in the canonical schemas; loading the written
// directory reproduces the dataset field-for-field.
void save_dataset(const Dataset& ds, const std::filesystem::path& dir);

} // namespace naturisk

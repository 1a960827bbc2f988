#include "naturisk/dataset.hpp"

#include "naturisk/csv.hpp"
#include "naturisk/errors.hpp"
#include "naturisk/sectors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace naturisk {

namespace {

const std::set<std::string_view> kContinents = {
    "africa", "asia", "europe", "north_america", "south_america", "oceania"};

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

double parse_double_field(std::string_view v, const std::string& file, size_t row, const std::string& col) {
    double out;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out))
        raise(Errc::schema_violation,
              file + " row " + std::to_string(row) + " column " + col + ": bad number '" + std::string(v) + "'");
    return out;
}

int parse_int_field(std::string_view v, const std::string& file, size_t row, const std::string& col) {
    int out;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        raise(Errc::schema_violation,
              file + " row " + std::to_string(row) + " column " + col + ": bad integer '" + std::string(v) + "'");
    return out;
}

csv::File read_schema_file(const std::filesystem::path& dir, const std::string& name,
                           const std::vector<std::string>& expected_header) {
    csv::File f = csv::read_file(dir / name);
    if (f.header != expected_header) {
        std::string want;
        for (const auto& h : expected_header)
            want += (want.empty() ? "" : ",") + h;
        raise(Errc::schema_violation, name + ": unexpected header (want " + want + ")");
    }
    return f;
}

} // namespace

const char* hazard_kind_name(HazardKind k) {
    switch (k) {
    case HazardKind::biodiversity: return "biodiversity";
    case HazardKind::land_degradation: return "land_degradation";
    case HazardKind::global_warming: return "global_warming";
    case HazardKind::population: return "population";
    case HazardKind::natural_capital: return "natural_capital";
    }
    return "?";
}

std::optional<HazardKind> parse_hazard_kind(std::string_view token) {
    for (int i = 0; i < kHazardKindCount; ++i) {
        auto k = static_cast<HazardKind>(i);
        if (token == hazard_kind_name(k))
            return k;
    }
    return std::nullopt;
}

const char* region_scope_name(RegionScope s) {
    switch (s) {
    case RegionScope::global: return "global";
    case RegionScope::continent: return "continent";
    case RegionScope::subregion: return "subregion";
    case RegionScope::country: return "country";
    }
    return "?";
}

std::optional<RegionScope> parse_region_scope(std::string_view token) {
    for (RegionScope s : {RegionScope::global, RegionScope::continent, RegionScope::subregion, RegionScope::country})
        if (token == region_scope_name(s))
            return s;
    return std::nullopt;
}

const char* rating_name(Rating r) {
    switch (r) {
    case Rating::none: return "none";
    case Rating::very_low: return "very_low";
    case Rating::low: return "low";
    case Rating::medium: return "medium";
    case Rating::high: return "high";
    case Rating::very_high: return "very_high";
    }
    return "?";
}

Rating parse_rating(std::string_view token) {
    std::string t = lower(token);
    for (Rating r : {Rating::none, Rating::very_low, Rating::low, Rating::medium, Rating::high, Rating::very_high})
        if (t == rating_name(r))
            return r;
    raise(Errc::unknown_rating, "'" + std::string(token) + "' is not a materiality rating");
}

const CountryMeta* Dataset::find_country(std::string_view iso3) const {
    auto it = std::lower_bound(countries.begin(), countries.end(), iso3,
                               [](const CountryMeta& c, std::string_view key) { return c.iso3 < key; });
    if (it != countries.end() && it->iso3 == iso3)
        return &*it;
    return nullptr;
}

size_t ValidationReport::error_count() const {
    size_t n = 0;
    for (const auto& i : issues)
        n += i.severity == ValidationIssue::Severity::error;
    return n;
}

size_t ValidationReport::warning_count() const {
    return issues.size() - error_count();
}

std::map<std::string, size_t> ValidationReport::errors_by_table() const {
    std::map<std::string, size_t> out;
    for (const auto& i : issues)
        if (i.severity == ValidationIssue::Severity::error)
            ++out[i.table];
    return out;
}

Dataset load_dataset_raw(const std::filesystem::path& data_dir) {
    if (!std::filesystem::is_directory(data_dir))
        raise(Errc::missing_file, "data directory not found: " + data_dir.string());

    Dataset ds;

    {
        auto f = read_schema_file(data_dir, "countries.csv",
                                  {"iso3", "name", "m49_subregion", "continent", "iucn_region", "land_area_km2",
                                   "gdp_usd"});
        size_t row = 1;
        for (const auto& r : f.rows) {
            ++row;
            CountryMeta c;
            c.iso3 = r[0];
            c.name = r[1];
            c.m49_subregion = r[2];
            c.continent = r[3];
            c.iucn_region = r[4];
            c.land_area_km2 = parse_double_field(r[5], "countries.csv", row, "land_area_km2");
            c.gdp_usd = parse_double_field(r[6], "countries.csv", row, "gdp_usd");
            ds.countries.push_back(std::move(c));
        }
    }

    {
        auto f = read_schema_file(data_dir, "hazards.csv",
                                  {"hazard_kind", "region_scope", "region_code", "year", "value"});
        size_t row = 1;
        for (const auto& r : f.rows) {
            ++row;
            HazardObservation h;
            auto kind = parse_hazard_kind(r[0]);
            if (!kind)
                raise(Errc::schema_violation,
                      "hazards.csv row " + std::to_string(row) + " column hazard_kind: unknown kind '" + r[0] + "'");
            auto scope = parse_region_scope(r[1]);
            if (!scope)
                raise(Errc::schema_violation,
                      "hazards.csv row " + std::to_string(row) + " column region_scope: unknown scope '" + r[1] + "'");
            h.kind = *kind;
            h.scope = *scope;
            h.region_code = r[2];
            h.year = parse_int_field(r[3], "hazards.csv", row, "year");
            h.value = parse_double_field(r[4], "hazards.csv", row, "value");
            ds.hazards.push_back(std::move(h));
        }
    }

    {
        auto f = read_schema_file(data_dir, "firms.csv",
                                  {"firm_id", "name", "nace4", "volatility_ann", "leverage_debt_to_assets"});
        size_t row = 1;
        for (const auto& r : f.rows) {
            ++row;
            FirmRecord firm;
            firm.firm_id = r[0];
            firm.name = r[1];
            firm.nace4 = r[2];
            firm.volatility = parse_double_field(r[3], "firms.csv", row, "volatility_ann");
            firm.leverage = parse_double_field(r[4], "firms.csv", row, "leverage_debt_to_assets");
            if (auto g = sector_group_for(firm.nace4))
                firm.sector_group = std::string(*g);
            ds.firms.push_back(std::move(firm));
        }
    }

    {
        auto f = read_schema_file(data_dir, "revenues.csv", {"firm_id", "region_code", "revenue"});
        size_t row = 1;
        for (const auto& r : f.rows) {
            ++row;
            RevenueBreakdown rev;
            rev.firm_id = r[0];
            rev.region_code = r[1];
            rev.revenue = parse_double_field(r[2], "revenues.csv", row, "revenue");
            ds.revenues.push_back(std::move(rev));
        }
    }

    {
        auto f = read_schema_file(data_dir, "encore_dependencies.csv",
                                  {"production_process", "ecosystem_service", "materiality_rating"});
        size_t row = 1;
        for (const auto& r : f.rows) {
            ++row;
            DependencyEntry d;
            d.production_process = r[0];
            d.ecosystem_service = r[1];
            try {
                d.rating = parse_rating(r[2]);
            } catch (const Error&) {
                raise(Errc::schema_violation, "encore_dependencies.csv row " + std::to_string(row) +
                                                  " column materiality_rating: unknown rating '" + r[2] + "'");
            }
            ds.dependencies.push_back(std::move(d));
        }
    }

    {
        auto f = read_schema_file(data_dir, "nace_crosswalk.csv", {"nace4", "production_process"});
        for (const auto& r : f.rows)
            ds.crosswalk.push_back({r[0], r[1]});
    }

    if (std::filesystem::exists(data_dir / "region_aggregates.csv")) {
        auto f = read_schema_file(data_dir, "region_aggregates.csv", {"aggregate_code", "iso3"});
        for (const auto& r : f.rows)
            ds.aggregates[r[0]].push_back(r[1]);
    }

    // Canonical order makes loading independent of input row order.
    std::sort(ds.countries.begin(), ds.countries.end());
    std::sort(ds.hazards.begin(), ds.hazards.end());
    std::sort(ds.firms.begin(), ds.firms.end());
    std::sort(ds.revenues.begin(), ds.revenues.end());
    std::sort(ds.dependencies.begin(), ds.dependencies.end());
    std::sort(ds.crosswalk.begin(), ds.crosswalk.end());
    ds.crosswalk.erase(std::unique(ds.crosswalk.begin(), ds.crosswalk.end()), ds.crosswalk.end());
    for (auto& [code, members] : ds.aggregates) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }
    return ds;
}

namespace {

// Direct series lookup used to decide whether a country needs a fallback.
// Subregion scope matches either the M49 subregion or the biodiversity
// (IUCN) region code, M49 first.
bool has_direct_series(const std::set<std::pair<int, std::string>>& keys,
                       const std::set<int>& global_kinds, HazardKind kind, const CountryMeta& c) {
    int k = static_cast<int>(kind);
    if (keys.count({k, "country/" + c.iso3}))
        return true;
    if (keys.count({k, "subregion/" + c.m49_subregion}))
        return true;
    if (keys.count({k, "subregion/" + c.iucn_region}))
        return true;
    if (keys.count({k, "continent/" + c.continent}))
        return true;
    return global_kinds.count(k) > 0;
}

} // namespace

ValidationReport validate_dataset(const Dataset& ds) {
    ValidationReport report;
    auto error = [&](const std::string& table, std::string msg, Errc code = Errc::schema_violation) {
        report.issues.push_back({ValidationIssue::Severity::error, table, std::move(msg), code});
    };
    auto warning = [&](const std::string& table, std::string msg) {
        report.issues.push_back({ValidationIssue::Severity::warning, table, std::move(msg),
                                 Errc::schema_violation});
    };

    // countries
    {
        std::set<std::string> seen;
        for (const auto& c : ds.countries) {
            if (!seen.insert(c.iso3).second)
                error("countries", "duplicate iso3 '" + c.iso3 + "'");
            if (c.iso3.size() != 3)
                error("countries", "iso3 '" + c.iso3 + "' is not 3 letters");
            if (!(c.land_area_km2 > 0))
                error("countries", c.iso3 + ": land_area_km2 must be positive");
            if (c.gdp_usd < 0)
                error("countries", c.iso3 + ": gdp_usd must be non-negative");
            if (c.m49_subregion.empty() || c.iucn_region.empty() || c.continent.empty())
                error("countries", c.iso3 + ": region codes must be non-empty");
            else if (!kContinents.count(c.continent))
                error("countries", c.iso3 + ": unknown continent '" + c.continent + "'");
        }
    }

    // hazards
    {
        std::set<std::tuple<int, std::string, int>> seen;
        for (const auto& h : ds.hazards) {
            if (!seen.insert({static_cast<int>(h.kind), h.region_code, h.year}).second)
                error("hazards", std::string(hazard_kind_name(h.kind)) + "/" + h.region_code + "/" +
                                     std::to_string(h.year) + " duplicated");
            if (h.year < 1950 || h.year > 2100)
                error("hazards", std::string(hazard_kind_name(h.kind)) + "/" + h.region_code + ": year " +
                                     std::to_string(h.year) + " outside [1950, 2100]");
            if (h.kind == HazardKind::biodiversity && (h.value < 0.0 || h.value > 1.0))
                error("hazards", "biodiversity/" + h.region_code + "/" + std::to_string(h.year) +
                                     ": RLI value " + csv::format_double(h.value) + " outside [0, 1]");
            if (h.kind == HazardKind::land_degradation && (h.value < 0.0 || h.value > 100.0))
                error("hazards", "land_degradation/" + h.region_code + "/" + std::to_string(h.year) +
                                     ": degraded-land share " + csv::format_double(h.value) + " outside [0, 100]");
        }
    }

    // firms
    std::set<std::string> firm_ids;
    for (const auto& f : ds.firms) {
        if (!firm_ids.insert(f.firm_id).second)
            error("firms", "duplicate firm_id '" + f.firm_id + "'");
        if (!is_valid_nace4(f.nace4))
            error("firms", f.firm_id + ": nace4 '" + f.nace4 + "' does not match dd.dd");
        else if (f.sector_group.empty())
            error("firms", f.firm_id + ": nace4 '" + f.nace4 + "' falls outside the 31 industry groups");
        if (f.volatility < 0)
            error("firms", f.firm_id + ": volatility must be non-negative");
        if (f.leverage < 0 || f.leverage > 5)
            error("firms", f.firm_id + ": leverage outside [0, 5]");
    }

    // aggregates
    for (const auto& [code, members] : ds.aggregates) {
        if (code == kRestOfWorld || ds.find_country(code))
            error("region_aggregates", "aggregate code '" + code + "' collides with a country code");
        if (members.empty())
            error("region_aggregates", "aggregate '" + code + "' has no members");
        for (const auto& m : members)
            if (!ds.find_country(m))
                error("region_aggregates", "aggregate '" + code + "' member '" + m + "' is not a country",
                      Errc::dangling_reference);
    }

    // revenues
    {
        std::set<std::pair<std::string, std::string>> seen;
        std::map<std::string, double> totals;
        for (const auto& r : ds.revenues) {
            if (!seen.insert({r.firm_id, r.region_code}).second)
                error("revenues", "duplicate (" + r.firm_id + ", " + r.region_code + ")");
            if (!firm_ids.count(r.firm_id))
                error("revenues", "firm_id '" + r.firm_id + "' not present in firms.csv",
                      Errc::dangling_reference);
            if (r.revenue < 0)
                error("revenues", r.firm_id + "/" + r.region_code + ": negative revenue");
            bool resolvable = r.region_code == kRestOfWorld || ds.find_country(r.region_code) ||
                              ds.aggregates.count(r.region_code);
            if (!resolvable)
                error("revenues", "region code '" + r.region_code + "' is neither a country, a declared "
                                  "aggregate, nor " + std::string(kRestOfWorld),
                      Errc::dangling_reference);
            totals[r.firm_id] += r.revenue;
        }
        for (const auto& f : ds.firms) {
            auto it = totals.find(f.firm_id);
            if (it == totals.end() || !(it->second > 0))
                error("revenues", f.firm_id + ": total revenue must be strictly positive");
        }
    }

    // dependencies + crosswalk
    {
        std::set<std::pair<std::string, std::string>> seen;
        std::set<std::string> processes;
        for (const auto& d : ds.dependencies) {
            if (!seen.insert({d.production_process, d.ecosystem_service}).second)
                error("encore_dependencies",
                      "duplicate (" + d.production_process + ", " + d.ecosystem_service + ")");
            processes.insert(d.production_process);
        }
        for (const auto& x : ds.crosswalk)
            if (!processes.count(x.production_process))
                error("nace_crosswalk", "process '" + x.production_process + "' has no dependency ratings",
                      Errc::dangling_reference);
    }

    // hazard coverage: countries that will need a fallback series
    {
        std::set<std::pair<int, std::string>> keys;
        std::set<int> global_kinds;
        for (const auto& h : ds.hazards) {
            if (h.scope == RegionScope::global)
                global_kinds.insert(static_cast<int>(h.kind));
            else
                keys.insert({static_cast<int>(h.kind),
                             std::string(region_scope_name(h.scope)) + "/" + h.region_code});
        }
        for (const auto& c : ds.countries) {
            int resolvable = 0;
            for (int k = 0; k < kHazardKindCount; ++k) {
                auto kind = static_cast<HazardKind>(k);
                if (has_direct_series(keys, global_kinds, kind, c)) {
                    ++resolvable;
                    continue;
                }
                bool peer = false;
                for (const auto& other : ds.countries)
                    if (other.iso3 != c.iso3 && other.continent == c.continent &&
                        has_direct_series(keys, global_kinds, kind, other))
                        peer = true;
                if (peer) {
                    ++resolvable;
                    warning("hazards", c.iso3 + ": no " + hazard_kind_name(kind) +
                                           " series; falling back to the " + c.continent +
                                           " land-weighted average");
                } else {
                    warning("hazards", c.iso3 + ": no " + hazard_kind_name(kind) +
                                           " series resolvable; hazard excluded from the mean");
                }
            }
            if (resolvable == 0)
                error("hazards", c.iso3 + ": no hazard series resolvable at any scope");
        }
    }

    return report;
}

Dataset load_dataset(const std::filesystem::path& data_dir) {
    Dataset ds = load_dataset_raw(data_dir);
    ValidationReport report = validate_dataset(ds);
    for (const auto& issue : report.issues)
        if (issue.severity == ValidationIssue::Severity::error)
            raise(issue.code, issue.table + ": " + issue.message);
    return ds;
}

void save_dataset(const Dataset& ds, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    namespace fs = std::filesystem;
    auto num = [](double v) { return csv::format_double(v); };

    {
        csv::Writer w({"iso3", "name", "m49_subregion", "continent", "iucn_region", "land_area_km2", "gdp_usd"});
        for (const auto& c : ds.countries)
            w.add_row({c.iso3, c.name, c.m49_subregion, c.continent, c.iucn_region, num(c.land_area_km2),
                       num(c.gdp_usd)});
        csv::write_text_file(dir / "countries.csv", w.to_csv());
    }
    {
        csv::Writer w({"hazard_kind", "region_scope", "region_code", "year", "value"});
        for (const auto& h : ds.hazards)
            w.add_row({hazard_kind_name(h.kind), region_scope_name(h.scope), h.region_code,
                       std::to_string(h.year), num(h.value)});
        csv::write_text_file(dir / "hazards.csv", w.to_csv());
    }
    {
        csv::Writer w({"firm_id", "name", "nace4", "volatility_ann", "leverage_debt_to_assets"});
        for (const auto& f : ds.firms)
            w.add_row({f.firm_id, f.name, f.nace4, num(f.volatility), num(f.leverage)});
        csv::write_text_file(dir / "firms.csv", w.to_csv());
    }
    {
        csv::Writer w({"firm_id", "region_code", "revenue"});
        for (const auto& r : ds.revenues)
            w.add_row({r.firm_id, r.region_code, num(r.revenue)});
        csv::write_text_file(dir / "revenues.csv", w.to_csv());
    }
    {
        csv::Writer w({"production_process", "ecosystem_service", "materiality_rating"});
        for (const auto& d : ds.dependencies)
            w.add_row({d.production_process, d.ecosystem_service, rating_name(d.rating)});
        csv::write_text_file(dir / "encore_dependencies.csv", w.to_csv());
    }
    {
        csv::Writer w({"nace4", "production_process"});
        for (const auto& x : ds.crosswalk)
            w.add_row({x.nace4, x.production_process});
        csv::write_text_file(dir / "nace_crosswalk.csv", w.to_csv());
    }
    if (!ds.aggregates.empty()) {
        csv::Writer w({"aggregate_code", "iso3"});
        for (const auto& [code, members] : ds.aggregates)
            for (const auto& m : members)
                w.add_row({code, m});
        csv::write_text_file(dir / "region_aggregates.csv", w.to_csv());
    }
    (void)fs::path{};
}

} // namespace naturisk

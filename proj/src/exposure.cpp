#include "naturisk/exposure.hpp"

#include "naturisk/errors.hpp"

#include <map>

namespace naturisk {

double ExposureVector::total() const {
    double t = 0.0;
    for (const auto& [code, share] : shares)
        t += share;
    return t;
}

std::vector<std::pair<std::string, double>> disaggregate_region(std::string_view aggregate_code,
                                                                double amount,
                                                                std::span<const GdpMember> members) {
    if (members.empty())
        raise(Errc::empty_aggregate, "aggregate '" + std::string(aggregate_code) + "' has no members");
    double total_gdp = 0.0;
    for (const auto& m : members)
        total_gdp += m.gdp;
    if (!(total_gdp > 0))
        raise(Errc::zero_aggregate_gdp,
              "aggregate '" + std::string(aggregate_code) + "' has zero total GDP");
    std::vector<std::pair<std::string, double>> out;
    out.reserve(members.size());
    for (const auto& m : members)
        out.emplace_back(m.iso3, amount * (m.gdp / total_gdp));
    return out;
}

ExposureVector exposure_shares(std::span<const RevenueBreakdown> rows, const Dataset& ds) {
    ExposureVector out;
    if (!rows.empty())
        out.firm_id = rows.front().firm_id;

    std::map<std::string, double> amounts; // iso3 (or REST_OF_WORLD) -> revenue
    double total = 0.0;
    for (const auto& r : rows) {
        if (r.revenue < 0)
            raise(Errc::negative_revenue,
                  r.firm_id + "/" + r.region_code + ": negative revenue segment");
        total += r.revenue;
        if (r.region_code == kRestOfWorld || ds.find_country(r.region_code)) {
            amounts[r.region_code] += r.revenue;
            continue;
        }
        auto agg = ds.aggregates.find(r.region_code);
        if (agg == ds.aggregates.end())
            raise(Errc::dangling_reference,
                  r.firm_id + ": unknown revenue region '" + r.region_code + "'");
        std::vector<GdpMember> members;
        members.reserve(agg->second.size());
        for (const auto& iso : agg->second) {
            const CountryMeta* c = ds.find_country(iso);
            if (!c)
                raise(Errc::dangling_reference, "aggregate member '" + iso + "' is not a country");
            members.push_back({iso, c->gdp_usd});
        }
        for (auto& [iso, amount] : disaggregate_region(r.region_code, r.revenue, members))
            amounts[iso] += amount;
    }
    if (!(total > 0))
        raise(Errc::zero_total_revenue, out.firm_id + ": total revenue must be positive");

    out.shares.reserve(amounts.size());
    for (const auto& [code, amount] : amounts)
        out.shares.emplace_back(code, amount / total);
    return out;
}

} // namespace naturisk

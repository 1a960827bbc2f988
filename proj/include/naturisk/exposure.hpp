#pragma once

#include "naturisk/dataset.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace naturisk {

// Revenue shares per country, sorted by code, summing to 1. REST_OF_WORLD
// appears as a pseudo-country scored against the world aggregate.
struct ExposureVector {
    std::string firm_id;
    std::vector<std::pair<std::string, double>> shares;

    double total() const;
};

struct GdpMember {
    std::string iso3;
    double gdp = 0.0;
};

// Splits an aggregate amount across members in proportion to GDP.
std::vector<std::pair<std::string, double>> disaggregate_region(std::string_view aggregate_code,
                                                                double amount,
                                                                std::span<const GdpMember> members);

// Country shares for one firm's revenue rows: aggregates are disaggregated
// by GDP share, amounts merged per country, then normalized by the total.
ExposureVector exposure_shares(std::span<const RevenueBreakdown> rows, const Dataset& ds);

} // namespace naturisk

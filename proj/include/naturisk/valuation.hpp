#pragma once

#include "naturisk/config.hpp"
#include "naturisk/dataset.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace naturisk {

struct FirmMultipliers {
    double sigma_mult = 1.0;
    double lev_mult = 1.0;
    bool degenerate = false; // group too small or zero mean; multipliers pinned to 1
};

// Volatility/leverage divided by the equal-weighted group means. Groups
// with fewer than two firms or a zero mean yield multipliers of 1.
std::vector<FirmMultipliers> sector_multipliers(std::span<const FirmRecord> group);

// Loss fractions are <= 0 and capped at -1 (equity cannot go below zero).
double stock_market_loss(double nrs_at_horizon, double sigma_mult, double lev_mult);

// Risk-adjusted value over t = 1..n_years with CF_t = cf_base*(1+g)^t,
// running sum to n_years-1 and a Gordon terminal term at n_years.
// nrs_by_year[0] is the first scenario year (t = 1).
double dcf_value(std::span<const double> nrs_by_year, const ScenarioConfig& cfg);

// Baseline value with no nature risk (the repo's V0 constant for a config).
double dcf_baseline_value(const ScenarioConfig& cfg);

double dcf_loss(double value, double baseline, double lev_mult);

double combined_loss(double loss_sm, double loss_dcf);

struct LossResult {
    std::string firm_id;
    std::string sector_group;
    double nrs = 0.0;
    double sigma_mult = 1.0;
    double lev_mult = 1.0;
    double loss_sm = 0.0;
    double loss_dcf = 0.0;
    double loss_combined = 0.0;
    double v_dcf = 0.0;
    double v0 = 0.0;
};

struct DistributionStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::map<int, double> percentiles; // {1, 5, 25, 50, 75, 95, 99}
};

// Equal-weighted stats; percentiles interpolate linearly between order
// statistics (inclusive convention: rank = q*(n-1)).
DistributionStats distribution_stats(std::span<const double> losses);

double percentile(std::span<const double> sorted_values, double q);

struct SectorStat {
    std::string group;
    std::string description;
    double mean_loss = 0.0;
    size_t firm_count = 0;
};

// Mean combined loss per industry group, in the canonical 31-row order;
// empty groups are omitted.
std::vector<SectorStat> sector_stats(std::span<const LossResult> results);

} // namespace naturisk

#include "naturisk/valuation.hpp"

#include "naturisk/errors.hpp"
#include "naturisk/sectors.hpp"

#include <algorithm>
#include <cmath>

namespace naturisk {

std::vector<FirmMultipliers> sector_multipliers(std::span<const FirmRecord> group) {
    std::vector<FirmMultipliers> out(group.size());
    if (group.empty())
        return out;

    double mean_sigma = 0.0, mean_lev = 0.0;
    for (const auto& f : group) {
        mean_sigma += f.volatility;
        mean_lev += f.leverage;
    }
    mean_sigma /= static_cast<double>(group.size());
    mean_lev /= static_cast<double>(group.size());

    const bool too_small = group.size() < 2;
    for (size_t i = 0; i < group.size(); ++i) {
        FirmMultipliers& m = out[i];
        if (too_small || mean_sigma == 0.0) {
            m.sigma_mult = 1.0;
            m.degenerate = true;
        } else {
            m.sigma_mult = group[i].volatility / mean_sigma;
        }
        if (too_small || mean_lev == 0.0) {
            m.lev_mult = 1.0;
            m.degenerate = true;
        } else {
            m.lev_mult = group[i].leverage / mean_lev;
        }
    }
    return out;
}

double stock_market_loss(double nrs_at_horizon, double sigma_mult, double lev_mult) {
    if (!(nrs_at_horizon >= 0.0 && nrs_at_horizon <= 1.0))
        raise(Errc::domain_error, "NRS must lie in [0, 1]");
    if (!(sigma_mult > 0.0) || !(lev_mult > 0.0))
        raise(Errc::domain_error, "multipliers must be positive");
    return std::max(-1.0, -nrs_at_horizon * sigma_mult * lev_mult);
}

double dcf_value(std::span<const double> nrs_by_year, const ScenarioConfig& cfg) {
    if (!(cfg.wacc > cfg.growth_g))
        raise(Errc::invalid_rates, "wacc must exceed growth_g");
    const int n_years = cfg.n_years();
    if (static_cast<int>(nrs_by_year.size()) != n_years)
        raise(Errc::domain_error, "NRS series must cover every scenario year");

    // Iterated powers keep the arithmetic identical across reruns.
    double pow_g = 1.0, pow_w = 1.0, running = 0.0;
    for (int t = 1; t < n_years; ++t) {
        pow_g *= 1.0 + cfg.growth_g;
        pow_w *= 1.0 + cfg.wacc;
        const double cf = cfg.cf_base * pow_g;
        running += cf * (1.0 - nrs_by_year[static_cast<size_t>(t - 1)]) / pow_w;
    }
    pow_g *= 1.0 + cfg.growth_g;
    pow_w *= 1.0 + cfg.wacc;
    const double cf_terminal = cfg.cf_base * pow_g;
    const double terminal = cf_terminal * (1.0 + cfg.growth_g) *
                            (1.0 - nrs_by_year[static_cast<size_t>(n_years - 1)]) /
                            ((cfg.wacc - cfg.growth_g) * pow_w);
    return running + terminal;
}

double dcf_baseline_value(const ScenarioConfig& cfg) {
    std::vector<double> zeros(static_cast<size_t>(cfg.n_years()), 0.0);
    return dcf_value(zeros, cfg);
}

double dcf_loss(double value, double baseline, double lev_mult) {
    if (!(baseline > 0.0))
        raise(Errc::domain_error, "baseline value must be positive");
    return std::max(-1.0, ((value - baseline) / baseline) * lev_mult);
}

double combined_loss(double loss_sm, double loss_dcf) {
    return (loss_sm + loss_dcf) / 2.0;
}

double percentile(std::span<const double> sorted_values, double q) {
    if (sorted_values.empty())
        raise(Errc::empty_input, "percentile of an empty sample");
    if (sorted_values.size() == 1)
        return sorted_values[0];
    const double rank = (q / 100.0) * static_cast<double>(sorted_values.size() - 1);
    const size_t lo = static_cast<size_t>(rank);
    if (lo + 1 >= sorted_values.size())
        return sorted_values.back();
    const double frac = rank - static_cast<double>(lo);
    return sorted_values[lo] + (sorted_values[lo + 1] - sorted_values[lo]) * frac;
}

DistributionStats distribution_stats(std::span<const double> losses) {
    if (losses.empty())
        raise(Errc::empty_input, "no losses to summarize");
    std::vector<double> sorted(losses.begin(), losses.end());
    std::sort(sorted.begin(), sorted.end());

    DistributionStats out;
    double sum = 0.0;
    for (double v : sorted)
        sum += v;
    out.mean = sum / static_cast<double>(sorted.size());
    out.min = sorted.front();
    out.max = sorted.back();
    for (int q : {1, 5, 25, 50, 75, 95, 99})
        out.percentiles[q] = percentile(sorted, q);
    return out;
}

std::vector<SectorStat> sector_stats(std::span<const LossResult> results) {
    std::vector<SectorStat> out;
    for (const auto& g : sector_groups()) {
        SectorStat stat;
        stat.group = std::string(g.code);
        stat.description = std::string(g.description);
        double sum = 0.0;
        for (const auto& r : results) {
            if (r.sector_group != g.code)
                continue;
            sum += r.loss_combined;
            ++stat.firm_count;
        }
        if (stat.firm_count == 0)
            continue;
        stat.mean_loss = sum / static_cast<double>(stat.firm_count);
        out.push_back(std::move(stat));
    }
    return out;
}

} // namespace naturisk

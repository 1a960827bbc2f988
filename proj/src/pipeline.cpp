#include "naturisk/pipeline.hpp"

#include "naturisk/errors.hpp"
#include "naturisk/parallel.hpp"

#include <algorithm>
#include <map>

namespace naturisk {

Pipeline::Pipeline(Dataset ds, ScenarioConfig cfg) : ds_(std::move(ds)), cfg_(cfg) {
    cfg_.validate();
}

void Pipeline::ensure_projections() {
    if (projections_)
        return;
    ProjectionTable table = project_all(ds_, cfg_);

    std::vector<CountryProjection> out(ds_.countries.size());
    std::vector<std::vector<std::string>> warn(ds_.countries.size());
    parallel_for(ds_.countries.size(), [&](size_t i) {
        const CountryMeta& c = ds_.countries[i];
        ResolvedHazards resolved = resolve_hazards(ds_, c, table, cfg_);
        out[i] = {c.iso3, std::move(resolved.paths)};
        warn[i] = std::move(resolved.warnings);
    });
    for (auto& w : warn)
        warnings_.insert(warnings_.end(), w.begin(), w.end());
    projections_ = std::move(out);
}

void Pipeline::ensure_degradation() {
    if (degradation_)
        return;
    ensure_projections();

    std::vector<DegradationSeries> series(projections_->size());
    parallel_for(projections_->size(), [&](size_t i) {
        const CountryProjection& cp = (*projections_)[i];
        series[i] = cdi_series(cp.iso3, cp.paths, cfg_);
    });

    std::vector<double> land;
    land.reserve(ds_.countries.size());
    for (const auto& c : ds_.countries)
        land.push_back(c.land_area_km2);

    DegradationSeries world;
    world.iso3 = "WORLD";
    world.first_year = cfg_.t0 + 1;
    world.cdi = region_aggregate(series, land);
    world_ = std::move(world);
    degradation_ = std::move(series);
}

void Pipeline::ensure_vulnerability() {
    if (vs_)
        return;
    std::map<std::string, VulnerabilityScore> by_nace;
    for (const auto& f : ds_.firms)
        if (!by_nace.count(f.nace4))
            by_nace.emplace(f.nace4, vulnerability_score(f.nace4, ds_.crosswalk, ds_.dependencies));
    std::vector<VulnerabilityScore> out;
    out.reserve(by_nace.size());
    for (auto& [nace, vs] : by_nace)
        out.push_back(std::move(vs));
    vs_ = std::move(out);
}

const DegradationSeries* Pipeline::series_for(const std::string& code) {
    ensure_degradation();
    if (code == kRestOfWorld || code == "WORLD")
        return &*world_;
    auto it = std::lower_bound(degradation_->begin(), degradation_->end(), code,
                               [](const DegradationSeries& s, const std::string& key) { return s.iso3 < key; });
    if (it != degradation_->end() && it->iso3 == code)
        return &*it;
    return nullptr;
}

void Pipeline::ensure_scores() {
    if (scores_)
        return;
    ensure_degradation();
    ensure_vulnerability();

    std::map<std::string, double> vs_by_nace;
    for (const auto& v : *vs_)
        vs_by_nace[v.nace4] = v.score;

    // revenues are sorted by firm, so each firm's rows form one block
    std::vector<std::span<const RevenueBreakdown>> blocks(ds_.firms.size());
    {
        size_t lo = 0;
        for (size_t i = 0; i < ds_.firms.size(); ++i) {
            const std::string& id = ds_.firms[i].firm_id;
            while (lo < ds_.revenues.size() && ds_.revenues[lo].firm_id < id)
                ++lo;
            size_t hi = lo;
            while (hi < ds_.revenues.size() && ds_.revenues[hi].firm_id == id)
                ++hi;
            blocks[i] = std::span<const RevenueBreakdown>(ds_.revenues.data() + lo, hi - lo);
            lo = hi;
        }
    }

    std::vector<ExposureVector> exposures(ds_.firms.size());
    std::vector<NatureRiskScore> scores(ds_.firms.size());
    parallel_for(ds_.firms.size(), [&](size_t i) {
        const FirmRecord& firm = ds_.firms[i];
        ExposureVector exp = exposure_shares(blocks[i], ds_);
        exp.firm_id = firm.firm_id;
        double vs = vs_by_nace.at(firm.nace4);
        scores[i] = nrs_time_series(exp, [this](const std::string& code) { return series_for(code); }, vs);
        exposures[i] = std::move(exp);
    });
    exposures_ = std::move(exposures);
    scores_ = std::move(scores);
}

void Pipeline::ensure_losses() {
    if (losses_)
        return;
    ensure_scores();

    // Group-level multiplier reduction precedes the per-firm valuations.
    std::map<std::string, std::vector<size_t>> groups;
    for (size_t i = 0; i < ds_.firms.size(); ++i)
        groups[ds_.firms[i].sector_group].push_back(i);

    std::vector<FirmMultipliers> mult(ds_.firms.size());
    for (const auto& [code, members] : groups) {
        std::vector<FirmRecord> group;
        group.reserve(members.size());
        for (size_t i : members)
            group.push_back(ds_.firms[i]);
        auto ms = sector_multipliers(group);
        bool degenerate = false;
        for (size_t j = 0; j < members.size(); ++j) {
            mult[members[j]] = ms[j];
            degenerate |= ms[j].degenerate;
        }
        if (degenerate)
            warnings_.push_back("sector group " + code + ": multipliers pinned to 1 (fewer than 2 firms or zero mean)");
    }

    const double v0 = dcf_baseline_value(cfg_);
    std::vector<LossResult> losses(ds_.firms.size());
    parallel_for(ds_.firms.size(), [&](size_t i) {
        const FirmRecord& firm = ds_.firms[i];
        const NatureRiskScore& nrs = (*scores_)[i];
        LossResult r;
        r.firm_id = firm.firm_id;
        r.sector_group = firm.sector_group;
        r.nrs = nrs.at_horizon();
        r.sigma_mult = mult[i].sigma_mult;
        r.lev_mult = mult[i].lev_mult;
        r.loss_sm = stock_market_loss(r.nrs, r.sigma_mult, r.lev_mult);
        r.v_dcf = dcf_value(nrs.by_year, cfg_);
        r.v0 = v0;
        r.loss_dcf = dcf_loss(r.v_dcf, v0, r.lev_mult);
        r.loss_combined = combined_loss(r.loss_sm, r.loss_dcf);
        losses[i] = std::move(r);
    });

    std::vector<double> combined;
    combined.reserve(losses.size());
    for (const auto& l : losses)
        combined.push_back(l.loss_combined);
    stats_ = distribution_stats(combined);
    sector_ = sector_stats(losses);
    losses_ = std::move(losses);
}

const std::vector<CountryProjection>& Pipeline::projections() {
    ensure_projections();
    return *projections_;
}

const std::vector<DegradationSeries>& Pipeline::degradation() {
    ensure_degradation();
    return *degradation_;
}

const DegradationSeries& Pipeline::world_aggregate() {
    ensure_degradation();
    return *world_;
}

const std::vector<VulnerabilityScore>& Pipeline::vulnerability() {
    ensure_vulnerability();
    return *vs_;
}

const std::vector<ExposureVector>& Pipeline::exposures() {
    ensure_scores();
    return *exposures_;
}

const std::vector<NatureRiskScore>& Pipeline::scores() {
    ensure_scores();
    return *scores_;
}

const std::vector<LossResult>& Pipeline::losses() {
    ensure_losses();
    return *losses_;
}

const DistributionStats& Pipeline::loss_stats() {
    ensure_losses();
    return *stats_;
}

const std::vector<SectorStat>& Pipeline::sector_losses() {
    ensure_losses();
    return *sector_;
}

} // namespace naturisk

#pragma once

#include "naturisk/config.hpp"
#include "naturisk/dataset.hpp"
#include "naturisk/degradation.hpp"
#include "naturisk/exposure.hpp"
#include "naturisk/scoring.hpp"
#include "naturisk/valuation.hpp"
#include "naturisk/vulnerability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace naturisk {

// Per-country resolved hazard paths (one per resolvable kind).
struct CountryProjection {
    std::string iso3;
    std::vector<ProjectedHazardPath> paths;
};

// Staged pipeline over an immutable dataset. Each ensure_* step fills its
// slice once; per-country and per-firm work runs on the worker pool with
// deterministic output ordering.
class Pipeline {
public:
    Pipeline(Dataset ds, ScenarioConfig cfg);

    const Dataset& dataset() const { return ds_; }
    const ScenarioConfig& config() const { return cfg_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    const std::vector<CountryProjection>& projections();         // sorted by iso3
    const std::vector<DegradationSeries>& degradation();         // sorted by iso3
    const DegradationSeries& world_aggregate();                  // land-weighted, all countries
    const std::vector<VulnerabilityScore>& vulnerability();      // per firm NACE, sorted
    const std::vector<ExposureVector>& exposures();              // sorted by firm
    const std::vector<NatureRiskScore>& scores();                // sorted by firm
    const std::vector<LossResult>& losses();                     // sorted by firm
    const DistributionStats& loss_stats();
    const std::vector<SectorStat>& sector_losses();

    const DegradationSeries* series_for(const std::string& code); // iso3 or REST_OF_WORLD

private:
    void ensure_projections();
    void ensure_degradation();
    void ensure_vulnerability();
    void ensure_scores();
    void ensure_losses();

    Dataset ds_;
    ScenarioConfig cfg_;
    std::vector<std::string> warnings_;

    std::optional<std::vector<CountryProjection>> projections_;
    std::optional<std::vector<DegradationSeries>> degradation_;
    std::optional<DegradationSeries> world_;
    std::optional<std::vector<VulnerabilityScore>> vs_;
    std::optional<std::vector<ExposureVector>> exposures_;
    std::optional<std::vector<NatureRiskScore>> scores_;
    std::optional<std::vector<LossResult>> losses_;
    std::optional<DistributionStats> stats_;
    std::optional<std::vector<SectorStat>> sector_;
};

} // namespace naturisk

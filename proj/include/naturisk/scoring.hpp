#pragma once

#include "naturisk/degradation.hpp"
#include "naturisk/exposure.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace naturisk {

struct NatureRiskScore {
    std::string firm_id;
    int first_year = 0;
    std::vector<double> by_year; // exposure-weighted CDI times VS, per year
    double at_horizon() const { return by_year.back(); }
};

// NRS at one date: vs * sum_c cdi[c] * exposure[c]. Exposure entries are
// traversed in sorted code order so the float sum is reproducible.
double nature_risk_score(const ExposureVector& exposure,
                         const std::map<std::string, double>& cdi_at, double vs);

// Per-year application over the countries' degradation series. The series
// lookup must cover every exposed code (REST_OF_WORLD resolves to the world
// aggregate series at the pipeline level).
NatureRiskScore nrs_time_series(const ExposureVector& exposure,
                                const std::function<const DegradationSeries*(const std::string&)>& series_for,
                                double vs);

} // namespace naturisk

#pragma once

#include "naturisk/config.hpp"
#include "naturisk/dataset.hpp"

#include <array>
#include <span>
#include <vector>

namespace naturisk {

struct YearValue {
    int year = 0;
    double value = 0.0;
};

// One indicator's observations for one region, sorted by year.
struct HazardSeries {
    HazardKind kind{};
    RegionScope scope{};
    std::string region_code;
    std::vector<YearValue> points;
};

enum class ProjectionMethod { poly3, linear, threshold_map };
const char* projection_method_name(ProjectionMethod m);

// Table-1 default estimator per hazard.
ProjectionMethod default_method(HazardKind kind);

// Yearly trajectory t0+1..T. Intensity paths hold the per-year loss rate
// lambda; threshold paths hold the 0-1 pressure level directly.
struct ProjectedHazardPath {
    HazardKind kind{};
    std::string region_code;
    ProjectionMethod method{};
    bool is_pressure_level = false;
    int first_year = 0;                // t0 + 1
    std::vector<double> values;        // one per year up to the horizon

    int last_year() const { return first_year + static_cast<int>(values.size()) - 1; }
};

// delta_t = value_t - value_{t-1} over consecutive-year pairs.
std::vector<YearValue> yoy_changes(std::span<const YearValue> series);

// Least-squares polynomial in a centered and scaled year coordinate:
// eval(year) = sum_k coeffs[k] * ((year - x_offset) / x_scale)^k.
// Centering keeps the normal equations conditioned for calendar-year input.
struct CubicFit {
    std::array<double, 4> coeffs{};
    double x_offset = 0.0;
    double x_scale = 1.0;

    double eval(double year) const;
    // Re-expresses the polynomial about a new origin with unit scale
    // (test/tooling aid; loses the conditioning benefits).
    std::array<double, 4> coeffs_about(double origin) const;
};

struct LinearFit {
    double slope = 0.0;     // per year
    double intercept = 0.0; // value at x_offset
    double x_offset = 0.0;

    double eval(double year) const { return intercept + slope * (year - x_offset); }
};

CubicFit fit_poly3(std::span<const YearValue> points);
LinearFit fit_linear(std::span<const YearValue> points);

// Intensity projection for the stock-style hazards (biodiversity, land
// degradation, natural capital). Yearly lambda is clamped to [-1, 1];
// negative lambda (recovering nature) is preserved.
ProjectedHazardPath project_intensity(const HazardSeries& series, ProjectionMethod method,
                                      const ScenarioConfig& cfg);

// Pressure mapping for the threshold hazards (warming, population):
// pressure_t = clamp01((v_t - v_t0) / (v_threshold - v_t0)) with v_t
// interpolated linearly between the t0 observation and the horizon value.
ProjectedHazardPath map_threshold_pressure(const HazardSeries& series, const ScenarioConfig& cfg);

// Dispatches on the hazard kind per Table-1 conventions.
ProjectedHazardPath project_hazard(const HazardSeries& series, const ScenarioConfig& cfg);

// Groups hazard observations into per-(kind, scope, code) series.
std::vector<HazardSeries> collect_series(const Dataset& ds);

} // namespace naturisk

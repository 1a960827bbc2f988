#include "naturisk/projection.hpp"

#include "naturisk/errors.hpp"
#include "naturisk/math.hpp"

#include <algorithm>
#include <cmath>

namespace naturisk {

namespace {

// Gaussian elimination with partial pivoting on a small dense system.
// Returns false when a pivot falls below tol (rank-deficient design).
template <size_t N>
bool solve_dense(std::array<std::array<double, N>, N>& a, std::array<double, N>& b, double tol) {
    for (size_t col = 0; col < N; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < N; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
                pivot = r;
        if (std::abs(a[pivot][col]) <= tol)
            return false;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(b[pivot], b[col]);
        }
        for (size_t r = col + 1; r < N; ++r) {
            double f = a[r][col] / a[col][col];
            for (size_t c = col; c < N; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (size_t i = N; i-- > 0;) {
        double s = b[i];
        for (size_t c = i + 1; c < N; ++c)
            s -= a[i][c] * b[c];
        b[i] = s / a[i][i];
    }
    return true;
}

double intensity_scale(HazardKind kind) {
    // RLI is already a 0-1 index; degraded-land shares and the NCI come in
    // percent / 0-100 points.
    switch (kind) {
    case HazardKind::biodiversity: return 1.0;
    case HazardKind::land_degradation: return 100.0;
    case HazardKind::natural_capital: return 100.0;
    default: return 1.0;
    }
}

double clamp_rate(double lambda) { return std::clamp(lambda, -1.0, 1.0); }

} // namespace

const char* projection_method_name(ProjectionMethod m) {
    switch (m) {
    case ProjectionMethod::poly3: return "poly3";
    case ProjectionMethod::linear: return "linear";
    case ProjectionMethod::threshold_map: return "threshold_map";
    }
    return "?";
}

ProjectionMethod default_method(HazardKind kind) {
    switch (kind) {
    case HazardKind::biodiversity: return ProjectionMethod::poly3;
    case HazardKind::land_degradation: return ProjectionMethod::linear;
    case HazardKind::global_warming: return ProjectionMethod::threshold_map;
    case HazardKind::population: return ProjectionMethod::threshold_map;
    case HazardKind::natural_capital: return ProjectionMethod::linear;
    }
    return ProjectionMethod::linear;
}

std::vector<YearValue> yoy_changes(std::span<const YearValue> series) {
    std::vector<YearValue> deltas;
    for (size_t i = 1; i < series.size(); ++i)
        if (series[i].year == series[i - 1].year + 1)
            deltas.push_back({series[i].year, series[i].value - series[i - 1].value});
    if (deltas.empty())
        raise(Errc::insufficient_data, "need at least two consecutive years for YoY changes");
    return deltas;
}

double CubicFit::eval(double year) const {
    double x = (year - x_offset) / x_scale;
    return ((coeffs[3] * x + coeffs[2]) * x + coeffs[1]) * x + coeffs[0];
}

std::array<double, 4> CubicFit::coeffs_about(double origin) const {
    // p(y) = sum c_k ((y - off)/s)^k; substitute u = y - origin and expand.
    double d = (origin - x_offset) / x_scale;
    double s1 = 1.0 / x_scale, s2 = s1 * s1, s3 = s2 * s1;
    const auto& c = coeffs;
    std::array<double, 4> out{};
    out[0] = ((c[3] * d + c[2]) * d + c[1]) * d + c[0];
    out[1] = (3.0 * c[3] * d + 2.0 * c[2]) * d * s1 + c[1] * s1;
    out[2] = 3.0 * c[3] * d * s2 + c[2] * s2;
    out[3] = c[3] * s3;
    return out;
}

CubicFit fit_poly3(std::span<const YearValue> points) {
    const size_t n = points.size();
    if (n < 4)
        raise(Errc::insufficient_data, "cubic fit needs at least 4 points");

    double sum_x = 0.0;
    for (const auto& p : points)
        sum_x += p.year;
    const double offset = sum_x / static_cast<double>(n);
    double spread = 0.0;
    for (const auto& p : points)
        spread = std::max(spread, std::abs(p.year - offset));
    const double scale = std::max(spread, 1.0);

    std::array<double, 7> m{}; // sum of xhat^0 .. xhat^6
    std::array<double, 4> b{};
    for (const auto& p : points) {
        const double x = (p.year - offset) / scale;
        double pw = 1.0;
        for (size_t k = 0; k < 7; ++k) {
            m[k] += pw;
            if (k < 4)
                b[k] += pw * p.value;
            pw *= x;
        }
    }
    std::array<std::array<double, 4>, 4> a{};
    double amax = 0.0;
    for (size_t j = 0; j < 4; ++j)
        for (size_t k = 0; k < 4; ++k) {
            a[j][k] = m[j + k];
            amax = std::max(amax, std::abs(a[j][k]));
        }
    if (!solve_dense(a, b, amax * 1e-10))
        raise(Errc::singular_fit, "cubic design matrix is rank deficient");
    return CubicFit{b, offset, scale};
}

LinearFit fit_linear(std::span<const YearValue> points) {
    const size_t n = points.size();
    if (n < 2)
        raise(Errc::insufficient_data, "linear fit needs at least 2 points");
    double sum_x = 0.0, sum_y = 0.0;
    for (const auto& p : points) {
        sum_x += p.year;
        sum_y += p.value;
    }
    const double xbar = sum_x / static_cast<double>(n);
    const double ybar = sum_y / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        const double dx = p.year - xbar;
        sxx += dx * dx;
        sxy += dx * (p.value - ybar);
    }
    if (!(sxx > 0.0))
        raise(Errc::singular_fit, "all x values identical");
    return LinearFit{sxy / sxx, ybar, xbar};
}

ProjectedHazardPath project_intensity(const HazardSeries& series, ProjectionMethod method,
                                      const ScenarioConfig& cfg) {
    if (method == ProjectionMethod::threshold_map)
        raise(Errc::domain_error, "threshold hazards use map_threshold_pressure");

    ProjectedHazardPath path;
    path.kind = series.kind;
    path.region_code = series.region_code;
    path.method = method;
    path.is_pressure_level = false;
    path.first_year = cfg.t0 + 1;

    const double scale = intensity_scale(series.kind);
    // Stock indices (RLI, NCI) lose value as nature degrades, so the loss
    // rate is the negated projected YoY change; degraded-land shares grow,
    // so the rate is the projected annual increment itself.
    const bool negate = series.kind != HazardKind::land_degradation;

    auto emit = [&](auto&& rate_at) {
        path.values.reserve(static_cast<size_t>(cfg.horizon - cfg.t0));
        for (int year = cfg.t0 + 1; year <= cfg.horizon; ++year)
            path.values.push_back(clamp_rate(rate_at(year)));
    };

    if (method == ProjectionMethod::poly3) {
        auto deltas = yoy_changes(series.points);
        CubicFit fit = fit_poly3(deltas);
        emit([&](int year) {
            double d = fit.eval(year) / scale;
            return negate ? -d : d;
        });
    } else if (series.kind == HazardKind::land_degradation) {
        LinearFit fit = fit_linear(series.points);
        emit([&](int) { return fit.slope / scale; });
    } else {
        auto deltas = yoy_changes(series.points);
        LinearFit fit = fit_linear(deltas);
        emit([&](int year) {
            double d = fit.eval(year) / scale;
            return negate ? -d : d;
        });
    }
    return path;
}

ProjectedHazardPath map_threshold_pressure(const HazardSeries& series, const ScenarioConfig& cfg) {
    const YearValue* at_t0 = nullptr;
    const YearValue* at_horizon = nullptr;
    for (const auto& p : series.points) {
        if (p.year == cfg.t0)
            at_t0 = &p;
        if (p.year == cfg.horizon)
            at_horizon = &p;
    }
    if (!at_t0 || !at_horizon)
        raise(Errc::insufficient_data,
              std::string(hazard_kind_name(series.kind)) + "/" + series.region_code +
                  ": threshold mapping needs values at the base year and the horizon");

    const double v0 = at_t0->value;
    const double vT = at_horizon->value;
    double v_threshold;
    switch (series.kind) {
    case HazardKind::global_warming:
        v_threshold = cfg.temp_threshold;
        break;
    case HazardKind::population:
        v_threshold = v0 * (1.0 + cfg.pop_growth_threshold);
        break;
    default:
        raise(Errc::domain_error, "threshold mapping applies to warming and population hazards");
    }
    if (v_threshold <= v0)
        raise(Errc::threshold_degenerate,
              std::string(hazard_kind_name(series.kind)) + "/" + series.region_code +
                  ": threshold does not exceed the base-year value");

    ProjectedHazardPath path;
    path.kind = series.kind;
    path.region_code = series.region_code;
    path.method = ProjectionMethod::threshold_map;
    path.is_pressure_level = true;
    path.first_year = cfg.t0 + 1;
    path.values.reserve(static_cast<size_t>(cfg.horizon - cfg.t0));
    const double span = v_threshold - v0;
    for (int year = cfg.t0 + 1; year <= cfg.horizon; ++year) {
        const double frac = static_cast<double>(year - cfg.t0) / static_cast<double>(cfg.horizon - cfg.t0);
        const double v = v0 + (vT - v0) * frac;
        path.values.push_back(math::clamp01((v - v0) / span));
    }
    return path;
}

ProjectedHazardPath project_hazard(const HazardSeries& series, const ScenarioConfig& cfg) {
    ProjectionMethod m = default_method(series.kind);
    if (m == ProjectionMethod::threshold_map)
        return map_threshold_pressure(series, cfg);
    return project_intensity(series, m, cfg);
}

std::vector<HazardSeries> collect_series(const Dataset& ds) {
    std::vector<HazardSeries> out;
    for (const auto& h : ds.hazards) {
        if (out.empty() || out.back().kind != h.kind || out.back().scope != h.scope ||
            out.back().region_code != h.region_code) {
            out.push_back({h.kind, h.scope, h.region_code, {}});
        }
        out.back().points.push_back({h.year, h.value});
    }
    return out;
}

} // namespace naturisk

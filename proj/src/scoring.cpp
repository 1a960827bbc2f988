#include "naturisk/scoring.hpp"

#include "naturisk/errors.hpp"
#include "naturisk/kernels.hpp"

namespace naturisk {

double nature_risk_score(const ExposureVector& exposure, const std::map<std::string, double>& cdi_at,
                         double vs) {
    double acc = 0.0;
    for (const auto& [code, share] : exposure.shares) { // shares are sorted by code
        auto it = cdi_at.find(code);
        if (it == cdi_at.end())
            raise(Errc::missing_cdi, exposure.firm_id + ": no CDI for '" + code + "'");
        acc += it->second * share;
    }
    return vs * acc;
}

NatureRiskScore nrs_time_series(const ExposureVector& exposure,
                                const std::function<const DegradationSeries*(const std::string&)>& series_for,
                                double vs) {
    NatureRiskScore out;
    out.firm_id = exposure.firm_id;

    size_t years = 0;
    std::vector<double> acc;
    for (const auto& [code, share] : exposure.shares) {
        const DegradationSeries* s = series_for(code);
        if (!s)
            raise(Errc::missing_cdi, exposure.firm_id + ": no CDI series for '" + code + "'");
        if (acc.empty()) {
            out.first_year = s->first_year;
            years = s->cdi.size();
            acc.assign(years, 0.0);
        } else if (s->cdi.size() != years || s->first_year != out.first_year) {
            raise(Errc::year_out_of_range, "CDI series span different years");
        }
        kernels::ops().axpy(share, s->cdi.data(), acc.data(), years);
    }
    if (acc.empty())
        raise(Errc::empty_input, exposure.firm_id + ": empty exposure vector");
    for (double& v : acc)
        v *= vs;
    out.by_year = std::move(acc);
    return out;
}

} // namespace naturisk

#include "naturisk/errors.hpp"

namespace naturisk {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::missing_file: return "MissingFile";
    case Errc::io_error: return "IoError";
    case Errc::schema_violation: return "SchemaViolation";
    case Errc::dangling_reference: return "DanglingReference";
    case Errc::config_error: return "ConfigError";
    case Errc::insufficient_data: return "InsufficientData";
    case Errc::singular_fit: return "SingularFit";
    case Errc::threshold_degenerate: return "ThresholdDegenerate";
    case Errc::year_out_of_range: return "YearOutOfRange";
    case Errc::domain_error: return "DomainError";
    case Errc::empty_input: return "EmptyInput";
    case Errc::no_hazard_data: return "NoHazardData";
    case Errc::empty_region: return "EmptyRegion";
    case Errc::unknown_rating: return "UnknownRating";
    case Errc::unknown_process: return "UnknownProcess";
    case Errc::unmapped_nace: return "UnmappedNace";
    case Errc::zero_total_revenue: return "ZeroTotalRevenue";
    case Errc::negative_revenue: return "NegativeRevenue";
    case Errc::empty_aggregate: return "EmptyAggregate";
    case Errc::zero_aggregate_gdp: return "ZeroAggregateGdp";
    case Errc::missing_cdi: return "MissingCdi";
    case Errc::invalid_rates: return "InvalidRates";
    }
    return "Error";
}

int Error::exit_code() const noexcept {
    switch (code_) {
    case Errc::config_error:
    case Errc::invalid_rates:
        return 3;
    case Errc::missing_file:
    case Errc::io_error:
        return 2;
    default:
        return 1;
    }
}

} // namespace naturisk

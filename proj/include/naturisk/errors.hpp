#pragma once

#include <stdexcept>
#include <string>

namespace naturisk {

// One code per failure mode named in the module contracts. The CLI maps
// codes to exit statuses: config -> 3, IO -> 2, everything else -> 1.
enum class Errc {
    missing_file,
    io_error,
    schema_violation,
    dangling_reference,
    config_error,
    insufficient_data,
    singular_fit,
    threshold_degenerate,
    year_out_of_range,
    domain_error,
    empty_input,
    no_hazard_data,
    empty_region,
    unknown_rating,
    unknown_process,
    unmapped_nace,
    zero_total_revenue,
    negative_revenue,
    empty_aggregate,
    zero_aggregate_gdp,
    missing_cdi,
    invalid_rates,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

    // 1 = validation, 2 = IO, 3 = config
    int exit_code() const noexcept;

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace naturisk

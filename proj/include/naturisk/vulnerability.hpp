#pragma once

#include "naturisk/dataset.hpp"

#include <span>
#include <string>
#include <vector>

namespace naturisk {

struct ProcessDependency {
    std::string production_process;
    double max_dependency = 0.0; // highest mapped rating across services
    std::string top_service;     // service carrying that maximum
};

struct VulnerabilityScore {
    std::string nace4;
    double score = 0.0; // mean of the per-process maxima
    std::vector<ProcessDependency> processes;
    std::string top_service; // highest-rated service overall

    int n_processes() const { return static_cast<int>(processes.size()); }
};

// ENCORE materiality ratings on the 0-1 scale in 0.2 increments.
double rating_to_score(Rating r);

// Highest mapped score across the process's rated services.
double process_max_dependency(std::string_view process, std::span<const DependencyEntry> table);

// Mean of per-process maxima over the (deduplicated) processes mapped to
// the NACE code; throws UnmappedNace when the crosswalk has no entry.
VulnerabilityScore vulnerability_score(std::string_view nace4,
                                       std::span<const CrosswalkEntry> crosswalk,
                                       std::span<const DependencyEntry> table);

} // namespace naturisk

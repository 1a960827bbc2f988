#include "naturisk/vulnerability.hpp"

#include "naturisk/errors.hpp"

#include <set>

namespace naturisk {

double rating_to_score(Rating r) {
    switch (r) {
    case Rating::none: return 0.0;
    case Rating::very_low: return 0.2;
    case Rating::low: return 0.4;
    case Rating::medium: return 0.6;
    case Rating::high: return 0.8;
    case Rating::very_high: return 1.0;
    }
    raise(Errc::unknown_rating, "rating out of enumeration");
}

namespace {

ProcessDependency process_dependency(std::string_view process, std::span<const DependencyEntry> table) {
    ProcessDependency out;
    out.production_process = std::string(process);
    double best = -1.0;
    for (const auto& e : table) {
        if (e.production_process != process)
            continue;
        double s = rating_to_score(e.rating);
        // ties resolve to the alphabetically first service for stable output
        if (s > best || (s == best && e.ecosystem_service < out.top_service)) {
            best = s;
            out.top_service = e.ecosystem_service;
        }
    }
    if (best < 0)
        raise(Errc::unknown_process, "production process '" + std::string(process) + "' has no ratings");
    out.max_dependency = best;
    return out;
}

} // namespace

double process_max_dependency(std::string_view process, std::span<const DependencyEntry> table) {
    return process_dependency(process, table).max_dependency;
}

VulnerabilityScore vulnerability_score(std::string_view nace4,
                                       std::span<const CrosswalkEntry> crosswalk,
                                       std::span<const DependencyEntry> table) {
    std::set<std::string> processes; // de-duplicated: n counts distinct processes
    for (const auto& x : crosswalk)
        if (x.nace4 == nace4)
            processes.insert(x.production_process);
    if (processes.empty())
        raise(Errc::unmapped_nace, "NACE " + std::string(nace4) + " has no crosswalk entry");

    VulnerabilityScore out;
    out.nace4 = std::string(nace4);
    double sum = 0.0;
    for (const auto& p : processes) {
        ProcessDependency dep = process_dependency(p, table);
        sum += dep.max_dependency;
        out.processes.push_back(std::move(dep));
    }
    out.score = sum / static_cast<double>(processes.size());

    double best = -1.0;
    for (const auto& p : out.processes) {
        if (p.max_dependency > best ||
            (p.max_dependency == best && p.top_service < out.top_service)) {
            best = p.max_dependency;
            out.top_service = p.top_service;
        }
    }
    return out;
}

} // namespace naturisk

#pragma once

#include "naturisk/pipeline.hpp"

#include <filesystem>
#include <string>

namespace naturisk {

enum class OutputFormat { csv, json };
OutputFormat parse_output_format(std::string_view token); // throws ConfigError

// Stage emitters; each writes its table(s) under out_dir in the chosen
// format. Row order is always sorted by key so reruns are byte-identical.
void write_projections(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt);
void write_cdi(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt,
               const std::vector<std::string>& country_filter = {});
void write_vs(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt);
void write_score(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt);
void write_losses(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt);

// Formats the report artifacts (country table, sector table, histogram,
// top-risk firms, plain-text summary) from the CSVs already present in
// out_dir. Histogram: 50 equal-width bins over [-1, 0].
void write_report(const std::filesystem::path& out_dir);

// manifest.json: config snapshot, input checksums, tool version, timestamp,
// warnings. Identical inputs reproduce identical manifests up to the
// timestamp field.
void write_manifest(const std::filesystem::path& out_dir, const ScenarioConfig& cfg,
                    const std::filesystem::path& data_dir, const std::vector<std::string>& warnings);

} // namespace naturisk

#include "naturisk/report.hpp"

#include "naturisk/csv.hpp"
#include "naturisk/errors.hpp"
#include "naturisk/sectors.hpp"
#include "naturisk/version.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

namespace naturisk {

namespace {

std::string num(double v) { return csv::format_double(v); }

void emit(const std::filesystem::path& out_dir, const std::string& stem, const csv::Writer& w,
          OutputFormat fmt) {
    std::filesystem::create_directories(out_dir);
    if (fmt == OutputFormat::csv)
        csv::write_text_file(out_dir / (stem + ".csv"), w.to_csv());
    else
        csv::write_text_file(out_dir / (stem + ".json"), w.to_json());
}

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_checksum(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(buf.str());
    return hex.str();
}

double parse_double(const std::string& s) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        raise(Errc::schema_violation, "bad number in pipeline output: '" + s + "'");
    }
}

} // namespace

OutputFormat parse_output_format(std::string_view token) {
    if (token == "csv")
        return OutputFormat::csv;
    if (token == "json")
        return OutputFormat::json;
    raise(Errc::config_error, "format must be csv or json (got '" + std::string(token) + "')");
}

void write_projections(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt) {
    csv::Writer w({"iso3", "hazard_kind", "method", "year", "value"});
    for (const auto& cp : p.projections()) {
        for (const auto& path : cp.paths) {
            for (size_t t = 0; t < path.values.size(); ++t)
                w.add_row({cp.iso3, hazard_kind_name(path.kind), projection_method_name(path.method),
                           std::to_string(path.first_year + static_cast<int>(t)), num(path.values[t])});
        }
    }
    emit(out_dir, "projections", w, fmt);
}

void write_cdi(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt,
               const std::vector<std::string>& country_filter) {
    csv::Writer w({"iso3", "year", "mean_damage", "tipping_prob", "tipping_damage", "cdi"});
    for (const auto& s : p.degradation()) {
        if (!country_filter.empty() &&
            std::find(country_filter.begin(), country_filter.end(), s.iso3) == country_filter.end())
            continue;
        for (size_t t = 0; t < s.cdi.size(); ++t)
            w.add_row({s.iso3, std::to_string(s.first_year + static_cast<int>(t)), num(s.mean_damage[t]),
                       num(s.tipping_prob[t]), num(s.tipping_damage[t]), num(s.cdi[t])});
    }
    emit(out_dir, "cdi", w, fmt);
}

void write_vs(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt) {
    csv::Writer w({"nace4", "score", "n_processes", "top_service"});
    for (const auto& v : p.vulnerability())
        w.add_row({v.nace4, num(v.score), std::to_string(v.n_processes()), v.top_service});
    emit(out_dir, "vs", w, fmt);
}

void write_score(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt) {
    {
        csv::Writer w({"firm_id", "iso3", "share"});
        for (const auto& e : p.exposures())
            for (const auto& [code, share] : e.shares)
                w.add_row({e.firm_id, code, num(share)});
        emit(out_dir, "exposures", w, fmt);
    }
    {
        csv::Writer w({"firm_id", "year", "nrs"});
        for (const auto& s : p.scores())
            for (size_t t = 0; t < s.by_year.size(); ++t)
                w.add_row({s.firm_id, std::to_string(s.first_year + static_cast<int>(t)), num(s.by_year[t])});
        emit(out_dir, "nrs", w, fmt);
    }
}

void write_losses(const std::filesystem::path& out_dir, Pipeline& p, OutputFormat fmt) {
    {
        csv::Writer w({"firm_id", "sector_group", "nrs", "sigma_mult", "lev_mult", "loss_sm", "loss_dcf",
                       "loss_combined"});
        for (const auto& l : p.losses())
            w.add_row({l.firm_id, l.sector_group, num(l.nrs), num(l.sigma_mult), num(l.lev_mult),
                       num(l.loss_sm), num(l.loss_dcf), num(l.loss_combined)});
        emit(out_dir, "losses", w, fmt);
    }
    {
        csv::Writer w({"sector_group", "mean_loss"});
        for (const auto& s : p.sector_losses())
            w.add_row({s.group, num(s.mean_loss)});
        emit(out_dir, "sector_losses", w, fmt);
    }
}

void write_report(const std::filesystem::path& out_dir) {
    // The report formats whatever the pipeline stages already produced.
    csv::File cdi = csv::read_file(out_dir / "cdi.csv");
    csv::File losses = csv::read_file(out_dir / "losses.csv");
    csv::File sector = csv::read_file(out_dir / "sector_losses.csv");
    if (losses.rows.empty())
        raise(Errc::empty_input, "losses.csv has no rows to report");

    // country table: CDI at the final projected year
    std::map<std::string, std::pair<int, double>> last_cdi; // iso3 -> (year, cdi)
    for (const auto& r : cdi.rows) {
        int year = static_cast<int>(parse_double(r[1]));
        auto& slot = last_cdi[r[0]];
        if (year >= slot.first)
            slot = {year, parse_double(r[5])};
    }
    csv::Writer countries({"iso3", "cdi"});
    for (const auto& [iso, yc] : last_cdi)
        countries.add_row({iso, num(yc.second)});
    csv::write_text_file(out_dir / "report_countries.csv", countries.to_csv());

    // histogram of combined losses: 50 equal-width bins over [-1, 0]
    constexpr int kBins = 50;
    std::array<size_t, kBins> counts{};
    std::vector<std::pair<std::string, std::pair<double, double>>> firm_losses; // id -> (nrs, loss)
    for (const auto& r : losses.rows) {
        double nrs = parse_double(r[2]);
        double loss = parse_double(r[7]);
        firm_losses.push_back({r[0], {nrs, loss}});
        double clamped = std::clamp(loss, -1.0, 0.0);
        int bin = std::min(kBins - 1, static_cast<int>((clamped + 1.0) * kBins));
        counts[static_cast<size_t>(bin)]++;
    }
    csv::Writer hist({"bin_lo", "bin_hi", "count"});
    for (int b = 0; b < kBins; ++b)
        hist.add_row({num(-1.0 + b * 0.02), num(-1.0 + (b + 1) * 0.02), std::to_string(counts[static_cast<size_t>(b)])});
    csv::write_text_file(out_dir / "report_histogram.csv", hist.to_csv());

    // top-risk firms by combined loss (worst first)
    std::sort(firm_losses.begin(), firm_losses.end(), [](const auto& a, const auto& b) {
        if (a.second.second != b.second.second)
            return a.second.second < b.second.second;
        return a.first < b.first;
    });
    csv::Writer top({"rank", "firm_id", "nrs", "loss_combined"});
    const size_t top_n = std::min<size_t>(10, firm_losses.size());
    for (size_t i = 0; i < top_n; ++i)
        top.add_row({std::to_string(i + 1), firm_losses[i].first, num(firm_losses[i].second.first),
                     num(firm_losses[i].second.second)});
    csv::write_text_file(out_dir / "report_top_firms.csv", top.to_csv());

    // plain-text summary
    std::ostringstream txt;
    txt << "Nature risk report\n";
    txt << "==================\n\n";
    txt << "Projected country degradation (final scenario year)\n";
    txt << "----------------------------------------------------\n";
    for (const auto& [iso, yc] : last_cdi) {
        std::ostringstream pct;
        pct << std::fixed << std::setprecision(1) << yc.second * 100.0;
        txt << "  " << iso << "  " << pct.str() << "%\n";
    }
    txt << "\nExpected loss by sector\n";
    txt << "-----------------------\n";
    for (const auto& r : sector.rows) {
        std::ostringstream pct;
        pct << std::fixed << std::setprecision(2) << parse_double(r[1]) * 100.0;
        std::string desc;
        if (auto d = sector_description(r[0]))
            desc = std::string(*d);
        txt << "  " << r[0] << "\t" << pct.str() << "%\t" << desc << "\n";
    }
    txt << "\nWorst-performing firms\n";
    txt << "----------------------\n";
    for (size_t i = 0; i < top_n; ++i) {
        std::ostringstream pct;
        pct << std::fixed << std::setprecision(2) << firm_losses[i].second.second * 100.0;
        txt << "  " << (i + 1) << ". " << firm_losses[i].first << "  " << pct.str() << "%\n";
    }
    csv::write_text_file(out_dir / "report.txt", txt.str());
}

void write_manifest(const std::filesystem::path& out_dir, const ScenarioConfig& cfg,
                    const std::filesystem::path& data_dir, const std::vector<std::string>& warnings) {
    std::filesystem::create_directories(out_dir);
    nlohmann::ordered_json m;
    m["tool"] = "naturisk";
    m["version"] = kVersion;

    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::ostringstream ts;
    ts << std::put_time(std::gmtime(&tt), "%Y-%m-%dT%H:%M:%SZ");
    m["timestamp"] = ts.str();

    nlohmann::ordered_json cj;
    cj["t0"] = cfg.t0;
    cj["horizon"] = cfg.horizon;
    cj["temp_threshold"] = cfg.temp_threshold;
    cj["pop_growth_threshold"] = cfg.pop_growth_threshold;
    cj["damage_steepness"] = cfg.damage_steepness;
    cj["damage_midpoint"] = cfg.damage_midpoint;
    cj["pi_tipping"] = cfg.pi_tipping;
    cj["wacc"] = cfg.wacc;
    cj["growth_g"] = cfg.growth_g;
    cj["cf_base"] = cfg.cf_base;
    m["config"] = std::move(cj);

    nlohmann::ordered_json inputs;
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(data_dir))
        if (entry.is_regular_file())
            names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names)
        inputs[n] = file_checksum(data_dir / n);
    m["inputs"] = std::move(inputs);

    m["warnings"] = warnings;

    csv::write_text_file(out_dir / "manifest.json", m.dump(2) + "\n");
}

} // namespace naturisk

#include "naturisk/errors.hpp"
#include "naturisk/kernels.hpp"
#include "naturisk/pipeline.hpp"
#include "naturisk/report.hpp"
#include "naturisk/version.hpp"

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

struct CommonArgs {
    std::string data_dir;
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "csv";
    std::string countries;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_countries = false) {
    cmd->add_option("--data-dir", args.data_dir, "input dataset directory")->required();
    cmd->add_option("--config", args.config_path, "scenario configuration file");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--format", args.format, "output format: csv or json");
    if (with_countries)
        cmd->add_option("--countries", args.countries, "comma-separated iso3 filter");
}

std::vector<std::string> split_codes(const std::string& csv_list) {
    std::vector<std::string> out;
    std::stringstream ss(csv_list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

naturisk::Pipeline make_pipeline(const CommonArgs& args) {
    naturisk::ScenarioConfig cfg;
    if (!args.config_path.empty())
        cfg = naturisk::load_scenario_config(args.config_path);
    naturisk::Dataset ds = naturisk::load_dataset(args.data_dir);
    return naturisk::Pipeline(std::move(ds), cfg);
}

void finish(const CommonArgs& args, naturisk::Pipeline& p) {
    naturisk::write_manifest(args.out_dir, p.config(), args.data_dir, p.warnings());
    for (const auto& w : p.warnings())
        std::cerr << "warning: " << w << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nature-risk analytics: country degradation, firm risk scores and loss estimates"};
    app.set_version_flag("--version", naturisk::kVersion);
    app.require_subcommand(1);

    CommonArgs args;
    std::function<void()> action;

    auto* project = app.add_subcommand("project", "project hazard paths per country");
    add_common(project, args);
    project->callback([&] {
        action = [&] {
            auto p = make_pipeline(args);
            naturisk::write_projections(args.out_dir, p, naturisk::parse_output_format(args.format));
            finish(args, p);
        };
    });

    auto* cdi = app.add_subcommand("cdi", "compute country degradation series");
    add_common(cdi, args, true);
    cdi->callback([&] {
        action = [&] {
            auto p = make_pipeline(args);
            naturisk::write_cdi(args.out_dir, p, naturisk::parse_output_format(args.format),
                                split_codes(args.countries));
            finish(args, p);
        };
    });

    auto* vs = app.add_subcommand("vs", "compute vulnerability scores per NACE code");
    add_common(vs, args);
    vs->callback([&] {
        action = [&] {
            auto p = make_pipeline(args);
            naturisk::write_vs(args.out_dir, p, naturisk::parse_output_format(args.format));
            finish(args, p);
        };
    });

    auto* score = app.add_subcommand("score", "compute exposures and nature risk scores");
    add_common(score, args);
    score->callback([&] {
        action = [&] {
            auto p = make_pipeline(args);
            naturisk::write_score(args.out_dir, p, naturisk::parse_output_format(args.format));
            finish(args, p);
        };
    });

    auto* losses = app.add_subcommand("losses", "estimate firm losses");
    add_common(losses, args);
    losses->callback([&] {
        action = [&] {
            auto p = make_pipeline(args);
            naturisk::write_losses(args.out_dir, p, naturisk::parse_output_format(args.format));
            finish(args, p);
        };
    });

    auto* report = app.add_subcommand("report", "format report tables from pipeline outputs");
    std::string report_out = "out";
    report->add_option("--out", report_out, "directory holding the pipeline outputs")->required();
    report->callback([&] {
        action = [&] { naturisk::write_report(report_out); };
    });

    auto* run_all = app.add_subcommand("run-all", "full pipeline plus report");
    add_common(run_all, args);
    run_all->callback([&] {
        action = [&] {
            auto p = make_pipeline(args);
            auto fmt = naturisk::parse_output_format(args.format);
            naturisk::write_projections(args.out_dir, p, fmt);
            naturisk::write_cdi(args.out_dir, p, fmt);
            naturisk::write_vs(args.out_dir, p, fmt);
            naturisk::write_score(args.out_dir, p, fmt);
            naturisk::write_losses(args.out_dir, p, fmt);
            if (fmt == naturisk::OutputFormat::csv)
                naturisk::write_report(args.out_dir);
            finish(args, p);
        };
    });

    CLI11_PARSE(app, argc, argv);

    try {
        naturisk::kernels::active_backend(); // surface a bad NATURISK_SIMD before any work
        action();
    } catch (const naturisk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "naturisk/pipeline.hpp"
#include "naturisk/csv.hpp"
#include "naturisk/errors.hpp"
#include "naturisk/kernels.hpp"
#include "naturisk/report.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>

using namespace naturisk;
using testutil::TempDir;

namespace {

Pipeline make_pipeline() {
    return Pipeline(load_dataset(testutil::fixture_dir()),
                    load_scenario_config(testutil::fixture_config()));
}

const LossResult& loss_of(const std::vector<LossResult>& losses, const std::string& id) {
    for (const auto& l : losses)
        if (l.firm_id == id)
            return l;
    throw std::runtime_error("missing firm " + id);
}

} // namespace

TEST_CASE("demo-world golden losses and aggregates") {
    auto p = make_pipeline();

    // frozen from the independent naive pipeline
    const auto& f01 = loss_of(p.losses(), "F01");
    CHECK(testutil::rel_close(f01.loss_combined, -0.3795766195724046, 1e-12));
    CHECK(f01.sigma_mult == 1.0); // singleton group
    const auto& f04 = loss_of(p.losses(), "F04");
    CHECK(testutil::rel_close(f04.loss_sm, -0.7952992834071836, 1e-12));
    CHECK(testutil::rel_close(f04.loss_dcf, -0.36790265191299315, 1e-12));

    const auto& world = p.world_aggregate();
    CHECK(testutil::rel_close(world.cdi.front(), 0.01977535892202778, 1e-12));
    CHECK(testutil::rel_close(world.cdi.back(), 0.44230148165485345, 1e-12));

    // 30 resolved hazard paths: 5 kinds for each of 6 countries
    size_t total_paths = 0;
    for (const auto& cp : p.projections())
        total_paths += cp.paths.size();
    CHECK(total_paths == 30);

    CHECK(p.loss_stats().mean < 0.0);
    CHECK(p.loss_stats().min >= -1.0);
    CHECK(p.sector_losses().size() == 7); // fixture populates 7 of the 31 groups

    // portfolio mean equals the size-weighted mean of sector means
    double weighted = 0.0;
    size_t firms = 0;
    for (const auto& s : p.sector_losses()) {
        weighted += s.mean_loss * static_cast<double>(s.firm_count);
        firms += s.firm_count;
    }
    CHECK(weighted / static_cast<double>(firms) ==
          doctest::Approx(p.loss_stats().mean).epsilon(1e-12));
}

TEST_CASE("forcing the scalar backend reproduces the same results") {
    auto original = kernels::active_backend();
    kernels::force_backend(kernels::Backend::scalar);
    auto p = make_pipeline();
    const auto& f01 = loss_of(p.losses(), "F01");
    CHECK(testutil::rel_close(f01.loss_combined, -0.3795766195724046, 1e-12));
    CHECK(testutil::rel_close(p.world_aggregate().cdi.back(), 0.44230148165485345, 1e-12));
    kernels::force_backend(original);
}

TEST_CASE("pipeline output is independent of the worker count") {
    auto run_with_threads = [&](const char* n) {
        setenv("NATURISK_THREADS", n, 1);
        auto p = make_pipeline();
        TempDir tmp(std::string("thr") + n);
        write_projections(tmp.path, p, OutputFormat::csv);
        write_cdi(tmp.path, p, OutputFormat::csv);
        write_score(tmp.path, p, OutputFormat::csv);
        write_losses(tmp.path, p, OutputFormat::csv);
        std::string blob;
        for (const char* name : {"projections.csv", "cdi.csv", "exposures.csv", "nrs.csv",
                                 "losses.csv", "sector_losses.csv"}) {
            std::ifstream in(tmp.path / name, std::ios::binary);
            blob.append(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
        unsetenv("NATURISK_THREADS");
        return blob;
    };
    CHECK(run_with_threads("1") == run_with_threads("8"));
}

TEST_CASE("stage-by-stage emission equals the all-in-one run") {
    TempDir staged("staged"), allinone("allinone");
    {
        auto p = make_pipeline();
        write_projections(staged.path, p, OutputFormat::csv);
    }
    {
        auto p = make_pipeline();
        write_cdi(staged.path, p, OutputFormat::csv);
    }
    {
        auto p = make_pipeline();
        write_vs(staged.path, p, OutputFormat::csv);
    }
    {
        auto p = make_pipeline();
        write_score(staged.path, p, OutputFormat::csv);
    }
    {
        auto p = make_pipeline();
        write_losses(staged.path, p, OutputFormat::csv);
    }
    {
        auto p = make_pipeline();
        write_projections(allinone.path, p, OutputFormat::csv);
        write_cdi(allinone.path, p, OutputFormat::csv);
        write_vs(allinone.path, p, OutputFormat::csv);
        write_score(allinone.path, p, OutputFormat::csv);
        write_losses(allinone.path, p, OutputFormat::csv);
    }
    for (const char* name : {"projections.csv", "cdi.csv", "vs.csv", "exposures.csv", "nrs.csv",
                             "losses.csv", "sector_losses.csv"}) {
        std::ifstream a(staged.path / name, std::ios::binary), b(allinone.path / name, std::ios::binary);
        std::string sa(std::istreambuf_iterator<char>(a), std::istreambuf_iterator<char>{});
        std::string sb(std::istreambuf_iterator<char>(b), std::istreambuf_iterator<char>{});
        CHECK(sa == sb);
    }
}

TEST_CASE("country filter restricts cdi output") {
    auto p = make_pipeline();
    TempDir tmp("filter");
    write_cdi(tmp.path, p, OutputFormat::csv, {"ZAF"});
    auto f = csv::read_file(tmp.path / "cdi.csv");
    CHECK(f.rows.size() == 28);
    for (const auto& r : f.rows)
        CHECK(r[0] == "ZAF");
}

TEST_CASE("json format emits the same tables as json arrays") {
    auto p = make_pipeline();
    TempDir tmp("json");
    write_vs(tmp.path, p, OutputFormat::json);
    std::ifstream in(tmp.path / "vs.json");
    std::string body(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    CHECK(body.find("\"nace4\": \"23.51\"") != std::string::npos);
}

TEST_CASE("report artifacts: histogram bins, top list, empty-input error") {
    auto p = make_pipeline();
    TempDir tmp("report");
    write_cdi(tmp.path, p, OutputFormat::csv);
    write_losses(tmp.path, p, OutputFormat::csv);
    write_report(tmp.path);

    auto hist = csv::read_file(tmp.path / "report_histogram.csv");
    CHECK(hist.rows.size() == 50);
    size_t total = 0;
    for (const auto& r : hist.rows)
        total += static_cast<size_t>(std::stoul(r[2]));
    CHECK(total == 12);

    auto top = csv::read_file(tmp.path / "report_top_firms.csv");
    CHECK(top.rows.size() == 10);
    CHECK(top.rows[0][1] == "F04"); // worst combined loss in the fixture

    auto countries = csv::read_file(tmp.path / "report_countries.csv");
    CHECK(countries.rows.size() == 6);

    CHECK(std::filesystem::exists(tmp.path / "report.txt"));

    // empty losses -> EmptyInput
    csv::write_text_file(tmp.path / "losses.csv",
                         "firm_id,sector_group,nrs,sigma_mult,lev_mult,loss_sm,loss_dcf,loss_combined\n");
    try {
        write_report(tmp.path);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_input);
    }
}

TEST_CASE("manifest snapshots config, inputs and warnings") {
    auto p = make_pipeline();
    p.losses(); // trigger the degenerate-group warnings
    TempDir tmp("manifest");
    write_manifest(tmp.path, p.config(), testutil::fixture_dir(), p.warnings());
    std::ifstream in(tmp.path / "manifest.json");
    std::string body(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    CHECK(body.find("\"wacc\": 0.0726") != std::string::npos);
    CHECK(body.find("countries.csv") != std::string::npos);
    CHECK(body.find("multipliers pinned to 1") != std::string::npos);
}

#include "naturisk/dataset.hpp"
#include "naturisk/csv.hpp"
#include "naturisk/errors.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

using namespace naturisk;
using testutil::TempDir;

namespace {

// copy the fixture, optionally rewriting one file through fn(lines)
void copy_fixture(const std::filesystem::path& dst,
                  const std::string& rewrite_file = "",
                  const std::function<void(std::vector<std::string>&)>& fn = {}) {
    std::filesystem::create_directories(dst);
    for (const auto& entry : std::filesystem::directory_iterator(testutil::fixture_dir())) {
        auto name = entry.path().filename().string();
        if (name == rewrite_file && fn) {
            std::ifstream in(entry.path());
            std::vector<std::string> lines;
            std::string line;
            while (std::getline(in, line))
                lines.push_back(line);
            fn(lines);
            std::ofstream out(dst / name);
            for (const auto& l : lines)
                out << l << "\n";
        } else {
            std::filesystem::copy_file(entry.path(), dst / name);
        }
    }
}

} // namespace

TEST_CASE("demo-world loads with 6 countries and 12 firms") {
    Dataset ds = load_dataset(testutil::fixture_dir());
    CHECK(ds.countries.size() == 6);
    CHECK(ds.firms.size() == 12);
    CHECK(ds.find_country("ZAF") != nullptr);
    CHECK(ds.find_country("XXX") == nullptr);
    CHECK(ds.aggregates.at("EUROPE_AGG") == std::vector<std::string>{"DEU", "FRA"});

    // sector groups are derived at load
    for (const auto& f : ds.firms)
        CHECK(!f.sector_group.empty());

    ValidationReport report = validate_dataset(ds);
    CHECK(report.error_count() == 0);
    CHECK(report.warning_count() == 0);
}

TEST_CASE("empty directory raises MissingFile") {
    TempDir tmp("empty");
    try {
        load_dataset(tmp.path);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::missing_file);
        CHECK(e.exit_code() == 2);
    }
}

TEST_CASE("revenue referencing an unknown firm is a dangling reference") {
    TempDir tmp("dangling");
    copy_fixture(tmp.path, "revenues.csv",
                 [](std::vector<std::string>& lines) { lines.push_back("GHOST,USA,10"); });
    try {
        load_dataset(tmp.path);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::dangling_reference);
    }
}

TEST_CASE("unknown revenue region code is rejected") {
    TempDir tmp("badregion");
    copy_fixture(tmp.path, "revenues.csv",
                 [](std::vector<std::string>& lines) { lines.push_back("F01,ATLANTIS,10"); });
    CHECK_THROWS_AS(load_dataset(tmp.path), Error);
}

TEST_CASE("RLI value outside [0,1] is one range error") {
    TempDir tmp("rli");
    copy_fixture(tmp.path, "hazards.csv", [](std::vector<std::string>& lines) {
        lines.push_back("biodiversity,subregion,europe,2021,1.3");
    });
    Dataset ds = load_dataset_raw(tmp.path);
    ValidationReport report = validate_dataset(ds);
    CHECK(report.error_count() == 1);
    CHECK(report.errors_by_table().at("hazards") == 1);
    CHECK_THROWS_AS(load_dataset(tmp.path), Error);
}

TEST_CASE("removing one country's NCI series yields exactly one fallback warning") {
    TempDir tmp("nci");
    copy_fixture(tmp.path, "hazards.csv", [](std::vector<std::string>& lines) {
        std::erase_if(lines, [](const std::string& l) {
            return l.rfind("natural_capital,country,FRA", 0) == 0;
        });
    });
    Dataset ds = load_dataset(tmp.path);
    ValidationReport report = validate_dataset(ds);
    CHECK(report.error_count() == 0);
    CHECK(report.warning_count() == 1);
    CHECK(report.issues[0].message.find("FRA") != std::string::npos);
    CHECK(report.issues[0].message.find("land-weighted") != std::string::npos);
}

TEST_CASE("duplicate hazard observation is an error") {
    TempDir tmp("dup");
    copy_fixture(tmp.path, "hazards.csv", [](std::vector<std::string>& lines) {
        lines.push_back("population,global,WORLD,2022,7.95e9");
    });
    CHECK_THROWS_AS(load_dataset(tmp.path), Error);
}

TEST_CASE("ratings parse case-insensitively, unknown tokens rejected") {
    CHECK(parse_rating("Very_High") == Rating::very_high);
    CHECK(parse_rating("NONE") == Rating::none);
    CHECK_THROWS_AS(parse_rating("severe"), Error);
}

TEST_CASE("round-trip: save then reload yields an identical dataset") {
    Dataset ds = load_dataset(testutil::fixture_dir());
    TempDir tmp("roundtrip");
    save_dataset(ds, tmp.path);
    // scenario.cfg is not part of the dataset schema; absence is fine
    Dataset reloaded = load_dataset(tmp.path);
    CHECK(ds == reloaded);
}

TEST_CASE("loading is independent of input row order") {
    TempDir tmp("perm");
    std::mt19937 rng(42);
    auto shuffle_tail = [&rng](std::vector<std::string>& lines) {
        if (lines.size() > 2)
            std::shuffle(lines.begin() + 1, lines.end(), rng);
    };
    std::filesystem::create_directories(tmp.path);
    for (const auto& entry : std::filesystem::directory_iterator(testutil::fixture_dir())) {
        auto name = entry.path().filename().string();
        std::ifstream in(entry.path());
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line))
            lines.push_back(line);
        if (name.ends_with(".csv"))
            shuffle_tail(lines);
        std::ofstream out(tmp.path / name);
        for (const auto& l : lines)
            out << l << "\n";
    }
    Dataset shuffled = load_dataset(tmp.path);
    Dataset original = load_dataset(testutil::fixture_dir());
    CHECK(shuffled == original);
}

TEST_CASE("firms with NACE outside the 31 groups fail validation") {
    TempDir tmp("nace");
    copy_fixture(tmp.path, "firms.csv", [](std::vector<std::string>& lines) {
        lines.push_back("F99,OddOne,97.00,0.2,0.3");
    });
    {
        // give F99 revenue so the NACE check is the failure that fires
        std::ofstream out(tmp.path / "revenues.csv", std::ios::app);
        out << "F99,USA,10\n";
    }
    try {
        load_dataset(tmp.path);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::schema_violation);
    }
}

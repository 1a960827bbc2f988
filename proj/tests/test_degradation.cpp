#include "naturisk/degradation.hpp"
#include "naturisk/errors.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace naturisk;

namespace {

ProjectedHazardPath flat_intensity(double lambda, int years = 28, int first = 2023) {
    ProjectedHazardPath p;
    p.kind = HazardKind::land_degradation;
    p.region_code = "c";
    p.method = ProjectionMethod::linear;
    p.first_year = first;
    p.values.assign(static_cast<size_t>(years), lambda);
    return p;
}

const ScenarioConfig kCfg{};

} // namespace

TEST_CASE("cumulative pressure: closed form for constant intensity") {
    auto p = flat_intensity(0.05, 10);
    CHECK(cumulative_pressure(p, 2032) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-14));
    CHECK(cumulative_pressure(p, 2032) == doctest::Approx(0.3934693402873666).epsilon(1e-14));
}

TEST_CASE("cumulative pressure: zero intensity gives zero") {
    auto p = flat_intensity(0.0, 10);
    CHECK(cumulative_pressure(p, 2032) == 0.0);
}

TEST_CASE("cumulative pressure: recovery passes through negative, unclamped") {
    auto p = flat_intensity(-0.05, 10);
    double ep = cumulative_pressure(p, 2032);
    CHECK(ep < 0.0);
    CHECK(ep == doctest::Approx(1.0 - std::exp(0.5)).epsilon(1e-14));
}

TEST_CASE("cumulative pressure: pressure-level paths read the level directly") {
    ProjectedHazardPath p = flat_intensity(0.0, 5);
    p.is_pressure_level = true;
    p.values = {0.1, 0.2, 0.3, 0.4, 0.5};
    CHECK(cumulative_pressure(p, 2025) == 0.3);
    CHECK_THROWS_AS(cumulative_pressure(p, 2030), Error);
    CHECK_THROWS_AS(cumulative_pressure(p, 2022), Error);
}

TEST_CASE("damage analytic points") {
    CHECK(damage(0.5, kCfg) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(damage(1.0, kCfg) == 1.0);
    CHECK(damage(0.0, kCfg) == doctest::Approx(0.0066928509242848554).epsilon(1e-14));
}

TEST_CASE("damage is strictly increasing on [0,1]") {
    double prev = damage(0.0, kCfg);
    for (int i = 1; i <= 1000; ++i) {
        double d = damage(i * 1e-3, kCfg);
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("mean damage and its clamp") {
    std::vector<double> d{0.7, 0.63, 0.55, 0.30, 0.10};
    CHECK(mean_damage(d) == doctest::Approx(0.456).epsilon(1e-12));
    std::vector<double> same{0.33, 0.33, 0.33};
    CHECK(mean_damage(same) == doctest::Approx(0.33));
    std::vector<double> cancel{-0.1, 0.1};
    CHECK(mean_damage(cancel) == 0.0);
    std::vector<double> deep_recovery{-3.0, 0.5};
    CHECK(mean_damage(deep_recovery) == 0.0); // clamp active
    std::vector<double> empty;
    CHECK_THROWS_AS(mean_damage(empty), Error);
}

TEST_CASE("mean damage is permutation invariant") {
    std::vector<double> d{0.7, 0.63, 0.55, 0.30, 0.10};
    std::vector<double> p{0.10, 0.55, 0.30, 0.7, 0.63};
    CHECK(mean_damage(d) == doctest::Approx(mean_damage(p)).epsilon(1e-14));
}

TEST_CASE("tipping probability points") {
    CHECK(tipping_probability(0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(tipping_probability(1.0) == 0.0); // exactly: nothing left to tip
    CHECK(tipping_probability(0.0) == doctest::Approx(0.0066928509242848554).epsilon(1e-14));
    CHECK_THROWS_AS(tipping_probability(1.2), Error);
    CHECK_THROWS_AS(tipping_probability(-0.1), Error);
}

TEST_CASE("tipping damage points") {
    CHECK(tipping_damage(0.5, 0.289) == doctest::Approx(0.1445).epsilon(1e-14));
    CHECK(tipping_damage(1.0, 0.289) == 0.0);
    CHECK(tipping_damage(0.5, 0.0) == 0.0);
    CHECK_THROWS_AS(tipping_damage(0.5, 1.5), Error);
}

TEST_CASE("country degradation index points") {
    double p = tipping_probability(0.5);
    double dtp = tipping_damage(0.5, 0.289);
    CHECK(country_degradation_index(0.5, p, dtp) == doctest::Approx(0.536125).epsilon(1e-13));

    double p0 = tipping_probability(0.0);
    double dtp0 = tipping_damage(0.0, 0.289);
    CHECK(country_degradation_index(0.0, p0, dtp0) ==
          doctest::Approx(0.0019342339171183232).epsilon(1e-12));

    CHECK(country_degradation_index(1.0, 0.0, 0.0) == 1.0);
}

TEST_CASE("composed CDI is non-decreasing and bounded by [dbar, 1]") {
    ScenarioConfig cfg;
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        double dbar = i * 1e-3;
        double cdi = country_degradation_index(dbar, tipping_probability(dbar),
                                               tipping_damage(dbar, cfg.pi_tipping));
        CHECK(cdi >= prev);
        CHECK(cdi >= dbar);
        CHECK(cdi <= 1.0);
        prev = cdi;
    }
}

TEST_CASE("cdi_series: zero hazards everywhere leaves the functional intercept") {
    std::vector<ProjectedHazardPath> paths;
    for (int i = 0; i < 5; ++i)
        paths.push_back(flat_intensity(0.0));
    auto s = cdi_series("AAA", paths, kCfg);
    REQUIRE(s.cdi.size() == 28);
    CHECK(s.hazards_used == 5);
    // chained intercept: EP = 0 gives d = 1/(1+e^5) per hazard, and the
    // tipping terms act on that mean, not on zero
    for (size_t t = 0; t < s.cdi.size(); ++t) {
        CHECK(s.mean_damage[t] == doctest::Approx(0.0066928509242848554).epsilon(1e-12));
        CHECK(s.cdi[t] == doctest::Approx(0.00873243517103936).epsilon(1e-12));
    }
}

TEST_CASE("cdi_series: monotone when all intensities are non-negative") {
    std::vector<ProjectedHazardPath> paths{flat_intensity(0.01), flat_intensity(0.03),
                                           flat_intensity(0.0)};
    auto s = cdi_series("AAA", paths, kCfg);
    for (size_t t = 1; t < s.cdi.size(); ++t)
        CHECK(s.cdi[t] >= s.cdi[t - 1]);
    CHECK(s.cdi.front() > 0.0);
    CHECK(s.cdi.back() <= 1.0);
}

TEST_CASE("cdi_series requires at least one path") {
    std::vector<ProjectedHazardPath> none;
    try {
        cdi_series("AAA", none, kCfg);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_hazard_data);
    }
}

TEST_CASE("region aggregate: equal areas average, single member is identity") {
    std::vector<ProjectedHazardPath> paths{flat_intensity(0.02)};
    auto a = cdi_series("AAA", paths, kCfg);
    std::vector<ProjectedHazardPath> paths_b{flat_intensity(0.05)};
    auto b = cdi_series("BBB", paths_b, kCfg);

    std::vector<DegradationSeries> members{a, b};
    std::vector<double> land{100.0, 100.0};
    auto agg = region_aggregate(members, land);
    for (size_t t = 0; t < agg.size(); ++t)
        CHECK(agg[t] == doctest::Approx((a.cdi[t] + b.cdi[t]) / 2.0).epsilon(1e-14));

    std::vector<DegradationSeries> one{a};
    std::vector<double> one_land{42.0};
    auto same = region_aggregate(one, one_land);
    for (size_t t = 0; t < same.size(); ++t)
        CHECK(same[t] == doctest::Approx(a.cdi[t]).epsilon(1e-15));

    std::vector<DegradationSeries> empty;
    std::vector<double> no_land;
    CHECK_THROWS_AS(region_aggregate(empty, no_land), Error);
}

TEST_CASE("golden degradation values for the demo-world fixture") {
    // frozen from the independent naive pipeline
    Dataset ds = load_dataset(testutil::fixture_dir());
    ScenarioConfig cfg = load_scenario_config(testutil::fixture_config());
    ProjectionTable table = project_all(ds, cfg);

    auto series_for = [&](const char* iso) {
        const CountryMeta* c = ds.find_country(iso);
        REQUIRE(c);
        auto resolved = resolve_hazards(ds, *c, table, cfg);
        CHECK(resolved.warnings.empty());
        CHECK(resolved.paths.size() == 5);
        return cdi_series(iso, resolved.paths, cfg);
    };

    auto zaf = series_for("ZAF");
    CHECK(testutil::rel_close(zaf.mean_damage.back(), 0.5943031547369947, 1e-12));
    CHECK(testutil::rel_close(zaf.tipping_prob.back(), 0.29198472923998636, 1e-12));
    CHECK(testutil::rel_close(zaf.tipping_damage.back(), 0.11724638828100853, 1e-12));
    CHECK(testutil::rel_close(zaf.cdi.back(), 0.6285373096735912, 1e-12));

    auto usa = series_for("USA");
    CHECK(testutil::rel_close(usa.cdi.back(), 0.4791408045217899, 1e-12));
    auto chn = series_for("CHN");
    CHECK(testutil::rel_close(chn.cdi.back(), 0.22349514119434796, 1e-12));
    auto deu = series_for("DEU");
    CHECK(testutil::rel_close(deu.cdi.front(), 0.019173976453918353, 1e-12));
}

TEST_CASE("hazard resolution falls back to the continent land-weighted average") {
    Dataset ds = load_dataset(testutil::fixture_dir());
    ScenarioConfig cfg = load_scenario_config(testutil::fixture_config());
    // drop FRA's natural-capital series: europe peer (DEU) supplies the path
    std::erase_if(ds.hazards, [](const HazardObservation& h) {
        return h.kind == HazardKind::natural_capital && h.region_code == "FRA";
    });
    ProjectionTable table = project_all(ds, cfg);
    const CountryMeta* fra = ds.find_country("FRA");
    auto resolved = resolve_hazards(ds, *fra, table, cfg);
    CHECK(resolved.paths.size() == 5);
    REQUIRE(resolved.warnings.size() == 1);
    CHECK(resolved.warnings[0].find("natural_capital") != std::string::npos);

    // with DEU the only peer, the averaged path equals DEU's own
    const ProjectedHazardPath* deu_path =
        table.find(HazardKind::natural_capital, RegionScope::country, "DEU");
    REQUIRE(deu_path);
    const ProjectedHazardPath& fallback = resolved.paths[static_cast<size_t>(HazardKind::natural_capital)];
    REQUIRE(fallback.values.size() == deu_path->values.size());
    for (size_t t = 0; t < fallback.values.size(); ++t)
        CHECK(fallback.values[t] == doctest::Approx(deu_path->values[t]).epsilon(1e-15));
}

TEST_CASE("a hazard with no series anywhere shrinks n") {
    Dataset ds = load_dataset(testutil::fixture_dir());
    ScenarioConfig cfg = load_scenario_config(testutil::fixture_config());
    std::erase_if(ds.hazards, [](const HazardObservation& h) {
        return h.kind == HazardKind::natural_capital;
    });
    ProjectionTable table = project_all(ds, cfg);
    const CountryMeta* usa = ds.find_country("USA");
    auto resolved = resolve_hazards(ds, *usa, table, cfg);
    CHECK(resolved.paths.size() == 4);
    CHECK(resolved.warnings.size() == 1);
    auto s = cdi_series("USA", resolved.paths, cfg);
    CHECK(s.hazards_used == 4);
}

#include "naturisk/vulnerability.hpp"
#include "naturisk/errors.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace naturisk;

namespace {

std::vector<DependencyEntry> table_of(std::initializer_list<DependencyEntry> entries) {
    return entries;
}

} // namespace

TEST_CASE("rating scores step in 0.2 increments") {
    CHECK(rating_to_score(Rating::none) == 0.0);
    CHECK(rating_to_score(Rating::very_low) == 0.2);
    CHECK(rating_to_score(Rating::low) == 0.4);
    CHECK(rating_to_score(Rating::medium) == 0.6);
    CHECK(rating_to_score(Rating::high) == 0.8);
    CHECK(rating_to_score(Rating::very_high) == 1.0);
}

TEST_CASE("process max dependency") {
    auto table = table_of({{"p", "s1", Rating::high},
                           {"p", "s2", Rating::low},
                           {"p", "s3", Rating::medium}});
    CHECK(process_max_dependency("p", table) == 0.8);

    auto all_none = table_of({{"p", "s1", Rating::none}, {"p", "s2", Rating::none}});
    CHECK(process_max_dependency("p", all_none) == 0.0);

    auto single = table_of({{"p", "s1", Rating::very_high}});
    CHECK(process_max_dependency("p", single) == 1.0);

    CHECK_THROWS_AS(process_max_dependency("ghost", table), Error);
}

TEST_CASE("vulnerability score averages per-process maxima") {
    auto table = table_of({{"a", "s1", Rating::very_high},
                           {"b", "s1", Rating::high},
                           {"b", "s2", Rating::low}});
    std::vector<CrosswalkEntry> xw{{"12.34", "a"}, {"12.34", "b"}};
    auto vs = vulnerability_score("12.34", xw, table);
    CHECK(vs.score == doctest::Approx(0.9));
    CHECK(vs.n_processes() == 2);
    CHECK(vs.top_service == "s1");
}

TEST_CASE("fixture encodes the published spot values") {
    Dataset ds = load_dataset(testutil::fixture_dir());
    auto cement = vulnerability_score("23.51", ds.crosswalk, ds.dependencies);
    CHECK(cement.score == 1.0);
    auto advertising = vulnerability_score("73.11", ds.crosswalk, ds.dependencies);
    CHECK(advertising.score == 0.4);
    auto rice = vulnerability_score("01.12", ds.crosswalk, ds.dependencies);
    CHECK(rice.score == doctest::Approx(0.8));
    CHECK(rice.n_processes() == 4);
}

TEST_CASE("duplicated crosswalk rows do not change the score") {
    auto table = table_of({{"a", "s1", Rating::very_high}, {"b", "s1", Rating::medium}});
    std::vector<CrosswalkEntry> xw{{"12.34", "a"}, {"12.34", "b"}};
    std::vector<CrosswalkEntry> dup{{"12.34", "a"}, {"12.34", "a"}, {"12.34", "b"}, {"12.34", "a"}};
    CHECK(vulnerability_score("12.34", xw, table).score ==
          vulnerability_score("12.34", dup, table).score);
}

TEST_CASE("adding a weaker service never changes the process max") {
    auto base = table_of({{"a", "s1", Rating::high}});
    std::vector<CrosswalkEntry> xw{{"12.34", "a"}};
    double before = vulnerability_score("12.34", xw, base).score;
    for (Rating weaker : {Rating::none, Rating::very_low, Rating::low, Rating::medium, Rating::high}) {
        auto extended = base;
        extended.push_back({"a", "s_extra", weaker});
        CHECK(vulnerability_score("12.34", xw, extended).score == before);
    }
}

TEST_CASE("VS is 1 iff every process has a very_high rating") {
    auto table = table_of({{"a", "s1", Rating::very_high}, {"b", "s1", Rating::high}});
    std::vector<CrosswalkEntry> xw{{"12.34", "a"}, {"12.34", "b"}};
    CHECK(vulnerability_score("12.34", xw, table).score < 1.0);
    auto boosted = table;
    boosted.push_back({"b", "s2", Rating::very_high});
    CHECK(vulnerability_score("12.34", xw, boosted).score == 1.0);
}

TEST_CASE("unmapped NACE codes fail rather than default") {
    Dataset ds = load_dataset(testutil::fixture_dir());
    try {
        vulnerability_score("99.99", ds.crosswalk, ds.dependencies);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unmapped_nace);
    }
}

#include "refcast/csv.hpp"
#include "refcast/dataset.hpp"
#include "refcast/errors.hpp"
#include "refcast/rng.hpp"

#include "doctest.h"

#include <cmath>

using namespace refcast;

namespace {

const char* kHeader =
    "id,name,sector,country,decision_year,est_cost,act_cost,"
    "est_duration_months,act_duration_months,price_basis\n";

std::string rows(const std::string& body) { return std::string(kHeader) + body; }

} // namespace

TEST_CASE("compute_overrun matches the actual/estimated definition") {
    CHECK(compute_overrun(100, 100) == 0.0);
    CHECK(compute_overrun(100, 5242) == doctest::Approx(51.42).epsilon(1e-12));
    CHECK(compute_overrun(100, 53) == doctest::Approx(-0.47).epsilon(1e-12));
    CHECK(compute_overrun(100, 150) == doctest::Approx(0.50).epsilon(1e-12));
}

TEST_CASE("compute_overrun rejects non-positive inputs by name") {
    CHECK_THROWS_WITH_AS(compute_overrun(0, 10), doctest::Contains("estimate"), DomainError);
    CHECK_THROWS_WITH_AS(compute_overrun(-3, 10), doctest::Contains("estimate"), DomainError);
    CHECK_THROWS_WITH_AS(compute_overrun(10, 0), doctest::Contains("actual"), DomainError);
    CHECK_THROWS_WITH_AS(compute_overrun(10, -1), doctest::Contains("actual"), DomainError);
}

TEST_CASE("compute_overrun properties: identity and unit invariance") {
    const SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double e = 0.01 + 500.0 * rng.uniform01_at(2 * i);
        const double a = 0.01 + 500.0 * rng.uniform01_at(2 * i + 1);
        CHECK(compute_overrun(e, e) == 0.0);
        const double k = 0.5 + 10.0 * rng.uniform01_at(1000 + i);
        CHECK(compute_overrun(e, a) ==
              doctest::Approx(compute_overrun(k * e, k * a)).epsilon(1e-12));
    }
}

TEST_CASE("extract_observations skips records lacking data for the variable") {
    const auto ds = parse_dataset(rows("p1,A,hydro,CA,1980,100,150,48,50,2010 CAD\n"
                                       "p2,B,hydro,CA,1981,100,,48,60,2010 CAD\n"
                                       "p3,C,road,US,1982,100,90,48,40,2010 USD\n"));
    REQUIRE(ds.size() == 3);
    const auto cost = extract_observations(ds, Variable::cost);
    REQUIRE(cost.size() == 2);
    CHECK(cost[0].project_id == "p1");
    CHECK(cost[0].value == doctest::Approx(0.50).epsilon(1e-12));
    CHECK(cost[1].project_id == "p3");
    CHECK(cost[1].value == doctest::Approx(-0.10).epsilon(1e-12));
    CHECK(count_missing(ds, Variable::cost) == 1);

    const auto sched = extract_observations(ds, Variable::schedule);
    CHECK(sched.size() == 3);
    CHECK(count_missing(ds, Variable::schedule) == 0);
}

TEST_CASE("extract_observations on an empty dataset") {
    const auto ds = parse_dataset(kHeader);
    CHECK(ds.size() == 0);
    CHECK(extract_observations(ds, Variable::cost).empty());
}

TEST_CASE("extracted counts partition the record count") {
    const auto ds = parse_dataset(rows("p1,A,hydro,CA,1980,100,150,,,\n"
                                       "p2,B,hydro,CA,1980,100,,48,60,\n"
                                       "p3,C,hydro,CA,1980,,,48,60,\n"
                                       "p4,D,hydro,CA,1980,100,120,48,44,\n"));
    for (Variable v : {Variable::cost, Variable::schedule})
        CHECK(extract_observations(ds, v).size() + count_missing(ds, v) == ds.size());
}

TEST_CASE("parse_dataset accepts a minimal valid file") {
    const auto ds = parse_dataset(rows("p1,Dam A,hydro,CA,1980,100,162,48,60,2010 CAD\n"));
    REQUIRE(ds.size() == 1);
    CHECK(ds.source_meta.rejects.empty());
    CHECK(ds.records[0].id == "p1");
    CHECK(ds.records[0].sector == Sector::hydro);
    CHECK(ds.records[0].country == "CA");
    CHECK(ds.records[0].decision_year == 1980);
    CHECK(ds.records[0].est_cost == 100.0);
    CHECK(ds.records[0].act_duration == 60.0);
}

TEST_CASE("parse_dataset rejects bad rows with line numbers and reasons") {
    const auto ds = parse_dataset(rows("p1,A,hydro,CA,1980,-5,150,,,\n"
                                       "p2,B,volcano,CA,1980,100,150,,,\n"
                                       "p3,C,hydro,Canada,1980,100,150,,,\n"
                                       "p4,D,hydro,CA,1776,100,150,,,\n"
                                       "p5,E,hydro,CA,1980,,,,,\n"
                                       "p6,F,hydro,CA,1980,100,abc,,,\n"
                                       "p7,G,hydro,CA,1980,100,140,,,\n"));
    CHECK(ds.size() == 1);
    REQUIRE(ds.source_meta.rejects.size() == 6);
    CHECK(ds.source_meta.rejects[0].line == 2);
    CHECK(ds.source_meta.rejects[0].reason == "non-positive estimate");
    CHECK(ds.source_meta.rejects[1].reason == "unknown sector 'volcano'");
    CHECK(ds.source_meta.rejects[2].line == 4);
    CHECK(ds.source_meta.rejects[3].reason == "invalid decision_year '1776'");
    CHECK(ds.source_meta.rejects[4].reason == "missing both estimates");
    CHECK(ds.source_meta.rejects[5].reason == "invalid number in act_cost");
}

TEST_CASE("blank actuals are absent, not errors") {
    const auto ds = parse_dataset(rows("p1,A,hydro,CA,1980,100,150,48,,\n"));
    REQUIRE(ds.size() == 1);
    CHECK(ds.source_meta.rejects.empty());
    CHECK_FALSE(ds.records[0].act_duration.has_value());
    CHECK(extract_observations(ds, Variable::schedule).empty());
    CHECK(extract_observations(ds, Variable::cost).size() == 1);
}

TEST_CASE("header problems and duplicate ids are fatal") {
    CHECK_THROWS_AS(parse_dataset(""), FormatError);
    CHECK_THROWS_AS(parse_dataset("id,name,sector\np1,A,hydro\n"), FormatError);
    CHECK_THROWS_AS(
        parse_dataset(rows("p1,A,hydro,CA,1980,100,150,,,\np1,B,hydro,CA,1981,100,150,,,\n")),
        FormatError);
}

TEST_CASE("quoted fields round-trip") {
    const auto ds =
        parse_dataset(rows("p1,\"Dam, the \"\"Great\"\"\",hydro,CA,1980,100,150,,,\n"));
    REQUIRE(ds.size() == 1);
    CHECK(ds.records[0].name == "Dam, the \"Great\"");
    const auto again = parse_dataset(to_csv(ds));
    CHECK(again.records == ds.records);
}

TEST_CASE("parse-serialize-parse round-trips randomized datasets") {
    const SplitMix64 rng(99);
    std::string body;
    for (int i = 0; i < 60; ++i) {
        const double est = 10.0 + 1000.0 * rng.uniform01_at(4 * i);
        const double act = 10.0 + 2000.0 * rng.uniform01_at(4 * i + 1);
        const bool has_act_cost = rng.uniform01_at(4 * i + 2) < 0.8;
        const bool has_sched = rng.uniform01_at(4 * i + 3) < 0.7;
        body += "p" + std::to_string(i) + ",Proj " + std::to_string(i) + ",hydro,CA," +
                std::to_string(1950 + i % 60) + "," + csv::num_to_string(est) + "," +
                (has_act_cost ? csv::num_to_string(act) : "") + "," +
                (has_sched ? "48" : "") + "," + (has_sched ? "60.5" : "") + ",basis\n";
    }
    const auto ds = parse_dataset(rows(body));
    CHECK(ds.size() == 60);
    const auto again = parse_dataset(to_csv(ds));
    CHECK(again.records == ds.records);
    CHECK(again.source_meta.rejects.empty());
}

TEST_CASE("filter selects by sector, country, and year range") {
    const auto ds = parse_dataset(rows("p1,A,hydro,CA,1980,100,150,,,\n"
                                       "p2,B,road,CA,1985,100,120,,,\n"
                                       "p3,C,hydro,NO,1990,100,130,,,\n"
                                       "p4,D,hydro,ca,1996,100,140,,,\n"));

    Filter by_sector;
    by_sector.sector = Sector::hydro;
    const auto hydro = filter(ds, by_sector);
    CHECK(hydro.size() == 3);
    for (const auto& r : hydro.records) CHECK(r.sector == Sector::hydro);
    CHECK(hydro.source_meta.annotations.back() == "filter: sector=hydro");

    Filter by_country;
    by_country.country = "CA";
    CHECK(filter(ds, by_country).size() == 3);  // lowercase "ca" normalized on parse

    Filter by_years;
    by_years.year_from = 1980;
    by_years.year_to = 1995;
    const auto mid = filter(ds, by_years);
    CHECK(mid.size() == 3);
    CHECK(mid.records.back().id == "p3");

    Filter everything;
    CHECK(filter(ds, everything).size() == 4);
    CHECK(everything.describe() == "all records");
}

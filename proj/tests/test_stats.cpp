#include "refcast/stats.hpp"
#include "refcast/errors.hpp"
#include "refcast/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace refcast;

namespace {

std::vector<OverrunObservation> obs_from(const std::vector<double>& values, int year = 2000) {
    std::vector<OverrunObservation> obs;
    for (std::size_t i = 0; i < values.size(); ++i)
        obs.push_back({values[i], Variable::cost, "p" + std::to_string(i), Sector::hydro,
                       "CA", year});
    return obs;
}

} // namespace

TEST_CASE("summarize: four-point worked example") {
    const std::vector<double> v{-0.10, 0.20, 0.30, 0.40};
    const auto s = summarize(std::span<const double>(v));
    CHECK(s.n == 4);
    CHECK(s.mean == doctest::Approx(0.20).epsilon(1e-12));
    CHECK(s.median == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s.min == -0.10);
    CHECK(s.max == 0.40);
    CHECK(s.freq_overrun == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("summarize: zero is not an overrun") {
    const std::vector<double> v{0.0};
    const auto s = summarize(std::span<const double>(v));
    CHECK(s.mean == 0.0);
    CHECK(s.median == 0.0);
    CHECK(s.freq_overrun == 0.0);
}

TEST_CASE("summarize rejects an empty sample") {
    CHECK_THROWS_AS(summarize(std::span<const double>{}), DomainError);
}

TEST_CASE("summarize is permutation-invariant") {
    const SplitMix64 rng(5);
    std::vector<double> v;
    for (int i = 0; i < 31; ++i) v.push_back(rng.uniform01_at(i) * 4.0 - 0.5);
    const auto base = summarize(std::span<const double>(v));
    std::vector<double> shuffled = v;
    std::sort(shuffled.rbegin(), shuffled.rend());
    const auto s = summarize(std::span<const double>(shuffled));
    CHECK(s.mean == doctest::Approx(base.mean).epsilon(1e-12));
    CHECK(s.median == base.median);
    CHECK(s.min == base.min);
    CHECK(s.max == base.max);
    CHECK(s.freq_overrun == base.freq_overrun);
}

TEST_CASE("tukey_fences: five-point worked example") {
    const auto obs = obs_from({0.01, 0.02, 0.03, 0.04, 1.00});
    const auto rep = tukey_fences(obs);
    CHECK(rep.lower_hinge == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(rep.upper_hinge == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(rep.upper_fence == doctest::Approx(0.07).epsilon(1e-12));
    CHECK(rep.lower_fence == doctest::Approx(-0.01).epsilon(1e-12));
    REQUIRE(rep.outlier_ids.size() == 1);
    CHECK(rep.outlier_ids[0] == "p4");
    CHECK(rep.outlier_share == doctest::Approx(0.20).epsilon(1e-12));
}

TEST_CASE("tukey_fences: tight symmetric set has no outliers") {
    const auto rep = tukey_fences(obs_from({-0.02, -0.01, 0.0, 0.01, 0.02}));
    CHECK(rep.outlier_ids.empty());
    CHECK(rep.outlier_share == 0.0);
}

TEST_CASE("tukey_fences needs at least four observations") {
    CHECK_THROWS_WITH_AS(tukey_fences(obs_from({1, 2, 3})),
                         doctest::Contains("too few observations"), DomainError);
}

TEST_CASE("tukey fences: flagged points sit outside, unflagged inside") {
    const SplitMix64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v;
        const int n = 4 + static_cast<int>(rng.uniform01_at(1000 + trial) * 40);
        for (int i = 0; i < n; ++i) {
            double x = rng.uniform01_at(trial * 100 + i);
            v.push_back(x < 0.1 ? x * 30.0 : x);  // occasional far point
        }
        const auto obs = obs_from(v);
        const auto rep = tukey_fences(obs);
        for (const auto& o : obs) {
            const bool flagged = std::find(rep.outlier_ids.begin(), rep.outlier_ids.end(),
                                           o.project_id) != rep.outlier_ids.end();
            const bool outside = o.value >= rep.upper_fence || o.value <= rep.lower_fence;
            CHECK(flagged == outside);
        }
    }
}

TEST_CASE("tukey fences: shifting all observations shifts fences, not membership") {
    const SplitMix64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v;
        const int n = 5 + static_cast<int>(rng.uniform01_at(5000 + trial) * 20);
        for (int i = 0; i < n; ++i)
            v.push_back(rng.uniform01_at(trial * 64 + i) * 3.0 - 0.5);
        const double c = rng.uniform01_at(9000 + trial) * 10.0 - 5.0;
        std::vector<double> shifted = v;
        for (double& x : shifted) x += c;

        const auto rep = tukey_fences(obs_from(v));
        const auto rep2 = tukey_fences(obs_from(shifted));
        CHECK(std::fabs(rep2.upper_fence - (rep.upper_fence + c)) < 1e-9);
        CHECK(std::fabs(rep2.lower_fence - (rep.lower_fence + c)) < 1e-9);
        CHECK(rep2.outlier_ids == rep.outlier_ids);
    }
}

TEST_CASE("classify_black_swans counts joint outliers") {
    // p9 is extreme on both variables; the rest are tame.
    std::string csv = "id,name,sector,country,decision_year,est_cost,act_cost,"
                      "est_duration_months,act_duration_months,price_basis\n";
    for (int i = 0; i < 9; ++i)
        csv += "p" + std::to_string(i) + ",A,hydro,CA,1980,100," +
               std::to_string(100 + i) + ",48," + std::to_string(48 + i % 3) + ",\n";
    csv += "p9,A,hydro,CA,1980,100,900,48,200,\n";
    const auto ds = parse_dataset(csv);
    REQUIRE(ds.size() == 10);

    const auto rep = classify_black_swans(ds);
    CHECK(rep.joint_count == 1);
    REQUIRE(rep.cost.outlier_ids.size() == 1);
    CHECK(rep.cost.outlier_ids[0] == "p9");
    CHECK(rep.schedule.outlier_ids[0] == "p9");
    CHECK(rep.joint_count <=
          std::min(rep.cost.outlier_ids.size(), rep.schedule.outlier_ids.size()));
}

TEST_CASE("classify_black_swans with nothing beyond the fences") {
    std::string csv = "id,name,sector,country,decision_year,est_cost,act_cost,"
                      "est_duration_months,act_duration_months,price_basis\n";
    for (int i = 0; i < 8; ++i)
        csv += "p" + std::to_string(i) + ",A,hydro,CA,1980,100," +
               std::to_string(110 + 5 * i) + ",48," + std::to_string(50 + 2 * i) + ",\n";
    const auto rep = classify_black_swans(parse_dataset(csv));
    CHECK(rep.cost.outlier_ids.empty());
    CHECK(rep.schedule.outlier_ids.empty());
    CHECK(rep.joint_count == 0);
}

TEST_CASE("moving_average: three-year worked example") {
    std::vector<OverrunObservation> obs;
    for (auto [year, value] : std::initializer_list<std::pair<int, double>>{
             {2000, 0.1}, {2000, 0.3}, {2001, 0.2}, {2002, 0.4}}) {
        OverrunObservation o;
        o.value = value;
        o.decision_year = year;
        obs.push_back(o);
    }
    const auto series = moving_average(obs, 3, 0.95);
    REQUIRE(series.points.size() == 3);

    // Center year window holds all four observations.
    const auto& p = series.points[1];
    CHECK(p.year == 2001);
    CHECK(p.window_n == 4);
    CHECK(p.window_mean == doctest::Approx(0.25).epsilon(1e-12));
    // Frozen t-interval: mean +/- t(0.975, 3) * s/sqrt(n).
    CHECK(p.ci_low == doctest::Approx(0.04457397432391211).epsilon(1e-12));
    CHECK(p.ci_high == doctest::Approx(0.4554260256760879).epsilon(1e-12));

    // Edge windows: {0.1, 0.3, 0.2} at 2000 and {0.2, 0.4} at 2002.
    CHECK(series.points[0].year == 2000);
    CHECK(series.points[0].window_n == 3);
    CHECK(series.points[0].window_mean == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(series.points[2].year == 2002);
    CHECK(series.points[2].window_n == 2);
    CHECK(series.points[2].window_mean == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("moving_average: equal values give a zero-width interval") {
    std::vector<OverrunObservation> obs;
    for (int i = 0; i < 2; ++i) {
        OverrunObservation o;
        o.value = 0.2;
        o.decision_year = 2005;
        obs.push_back(o);
    }
    const auto series = moving_average(obs, 1, 0.95);
    REQUIRE(series.points.size() == 1);
    CHECK(series.points[0].window_mean == 0.2);
    CHECK(series.points[0].ci_low == 0.2);
    CHECK(series.points[0].ci_high == 0.2);
}

TEST_CASE("moving_average window 1 equals per-year means") {
    const SplitMix64 rng(31);
    std::vector<OverrunObservation> obs;
    for (int year = 1990; year < 1998; ++year)
        for (int j = 0; j < 4; ++j) {
            OverrunObservation o;
            o.value = rng.uniform01_at(year * 10 + j) * 2.0;
            o.decision_year = year;
            obs.push_back(o);
        }
    const auto series = moving_average(obs, 1, 0.95);
    REQUIRE(series.points.size() == 8);
    for (const auto& p : series.points) {
        std::vector<double> year_vals;
        for (const auto& o : obs)
            if (o.decision_year == p.year) year_vals.push_back(o.value);
        const auto s = summarize(std::span<const double>(year_vals));
        CHECK(p.window_mean == doctest::Approx(s.mean).epsilon(1e-12));
        CHECK(p.window_n == s.n);
        CHECK(p.ci_low <= p.window_mean);
        CHECK(p.ci_high >= p.window_mean);
    }
}

TEST_CASE("moving_average: single observations everywhere yield an empty series") {
    std::vector<OverrunObservation> obs(1);
    obs[0].value = 0.5;
    obs[0].decision_year = 1990;
    const auto series = moving_average(obs, 1, 0.95);
    CHECK(series.points.empty());
}

TEST_CASE("moving_average validates the window") {
    std::vector<OverrunObservation> obs(2);
    obs[0].decision_year = obs[1].decision_year = 2000;
    CHECK_THROWS_AS(moving_average(obs, 2, 0.95), DomainError);
    CHECK_THROWS_AS(moving_average(obs, -1, 0.95), DomainError);
    CHECK_THROWS_AS(moving_average(obs, 3, 1.5), DomainError);
}

#include "refcast/synth.hpp"
#include "refcast/errors.hpp"
#include "refcast/hypotests.hpp"
#include "refcast/rng.hpp"
#include "refcast/stats.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

using namespace refcast;

TEST_CASE("SplitMix64 reproduces the reference sequence") {
    // First outputs of the sequential reference implementation
    // (https://prng.di.unimi.it/splitmix64.c) for each seed.
    const SplitMix64 zero(0);
    CHECK(zero.at(0) == 0xe220a8397b1dcdafULL);
    CHECK(zero.at(1) == 0x6e789e6aa1b965f4ULL);
    CHECK(zero.at(2) == 0x06c45d188009454fULL);
    CHECK(zero.at(3) == 0xf88bb8a8724c81ecULL);

    const SplitMix64 s42(42);
    CHECK(s42.at(0) == 0xbdd732262feb6e95ULL);
    CHECK(s42.at(1) == 0x28efe333b266f103ULL);

    const SplitMix64 big(0x123456789abcdefULL);
    CHECK(big.at(0) == 0x157a3807a48faa9dULL);
    CHECK(big.at(1) == 0xd573529b34a1d093ULL);
    CHECK(big.at(2) == 0x2f90b72e996dccbeULL);
    CHECK(big.at(3) == 0xa2d419334c4667ecULL);
}

TEST_CASE("uniform draws live strictly inside (0, 1)") {
    const SplitMix64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform01_at(i);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("normal_quantile matches reference values") {
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-13));
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.9599639845400545).epsilon(1e-13));
    CHECK(normal_quantile(0.001) == doctest::Approx(-3.090232306167813).epsilon(1e-13));
    CHECK(normal_quantile(0.999) == doctest::Approx(3.090232306167813).epsilon(1e-13));
    CHECK(normal_quantile(0.3) == doctest::Approx(-0.5244005127080409).epsilon(1e-13));
    CHECK(normal_quantile(0.7) == doctest::Approx(0.5244005127080407).epsilon(1e-13));
    CHECK(normal_quantile(1e-9) == doctest::Approx(-5.9978070150076865).epsilon(1e-13));
    CHECK(normal_quantile(0.4) == doctest::Approx(-normal_quantile(0.6)).epsilon(1e-13));
    CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
    CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
}

TEST_CASE("zero scale pins every overrun at the location") {
    SynthSpec spec;
    spec.n = 5;
    spec.tail = Tail::symmetric;
    spec.location = 0.0;
    spec.scale = 0.0;
    spec.seed = 1;
    const auto ds = generate(spec);
    REQUIRE(ds.size() == 5);
    for (const auto& r : ds.records) {
        CHECK(*r.est_cost == 100.0);
        CHECK(*r.act_cost == 100.0);
    }
    const auto obs = extract_observations(ds, Variable::cost);
    for (const auto& o : obs) CHECK(o.value == 0.0);
}

TEST_CASE("identical specs generate byte-identical datasets") {
    SynthSpec spec;
    spec.n = 64;
    spec.tail = Tail::heavy_right;
    spec.location = 0.28;
    spec.scale = 0.9;
    spec.seed = 20260810;
    CHECK(to_csv(generate(spec)) == to_csv(generate(spec)));

    SynthSpec other = spec;
    other.seed = spec.seed + 1;
    CHECK(to_csv(generate(other)) != to_csv(generate(spec)));
}

TEST_CASE("heavy_right sample matches the lognormal median and skew") {
    SynthSpec spec;
    spec.n = 10000;
    spec.tail = Tail::heavy_right;
    spec.location = 0.28;
    spec.scale = 0.9;
    spec.seed = 7;
    const auto ds = generate(spec);
    const auto values = values_of(extract_observations(ds, Variable::cost));
    const auto s = summarize(std::span<const double>(values));

    const double target_median = std::exp(0.28) - 1.0;  // 0.3231...
    CHECK(std::fabs(s.median - target_median) < 0.05);
    CHECK(s.mean > s.median);  // right skew, Table-1 style
    CHECK(s.min > -1.0);
}

TEST_CASE("heavy_right values always exceed -1") {
    SynthSpec spec;
    spec.n = 5000;
    spec.tail = Tail::heavy_right;
    spec.location = -2.0;  // pushes mass toward the bound
    spec.scale = 1.5;
    spec.seed = 99;
    const auto values = values_of(extract_observations(generate(spec), Variable::cost));
    CHECK(*std::min_element(values.begin(), values.end()) > -1.0);
}

TEST_CASE("symmetric resampling respects the -1 bound") {
    SynthSpec spec;
    spec.n = 2000;
    spec.tail = Tail::symmetric;
    spec.location = -0.8;
    spec.scale = 0.5;  // raw range [-1.3, -0.3] forces resampling
    spec.seed = 5;
    const auto values = values_of(extract_observations(generate(spec), Variable::cost));
    REQUIRE(values.size() == 2000);
    for (double v : values) {
        CHECK(v > -1.0);
        CHECK(v <= -0.3 + 1e-12);
    }
}

TEST_CASE("signed-rank test holds its size on symmetric zero-centered data") {
    int nonsignificant = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        SynthSpec spec;
        spec.n = 25;
        spec.tail = Tail::symmetric;
        spec.location = 0.0;
        spec.scale = 0.5;
        spec.seed = seed;
        const auto values = values_of(extract_observations(generate(spec), Variable::cost));
        if (signed_rank_test(values).p_value > 0.05) ++nonsignificant;
    }
    CHECK(nonsignificant >= 93);
}

TEST_CASE("generated records carry the stamped labels and years") {
    SynthSpec spec;
    spec.n = 120;
    spec.seed = 2;
    spec.sector = Sector::rail;
    spec.country = "NO";
    const auto ds = generate(spec);
    CHECK(ds.records[0].id == "SYN-000001");
    CHECK(ds.records[119].id == "SYN-000120");
    for (const auto& r : ds.records) {
        CHECK(r.sector == Sector::rail);
        CHECK(r.country == "NO");
        CHECK(r.decision_year >= 1960);
        CHECK(r.decision_year <= 2009);
    }
    CHECK(ds.records[0].decision_year == 1960);
    CHECK(ds.records[50].decision_year == 1960);  // 50-year cycle
}

TEST_CASE("invalid specs are rejected") {
    SynthSpec spec;
    spec.n = 0;
    CHECK_THROWS_AS(generate(spec), DomainError);
    spec.n = 5;
    spec.scale = -1.0;
    CHECK_THROWS_AS(generate(spec), DomainError);
    spec.scale = 0.0;
    spec.location = -2.0;  // symmetric, degenerate below the bound
    CHECK_THROWS_AS(generate(spec), DomainError);
}

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <descdyn/orbit.hpp>

using namespace descdyn;

namespace {

FeatureVector basis_vec(int i, int n) {
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    v[static_cast<std::size_t>(i)] = 1.0;
    return FeatureVector(std::move(v));
}

}  // namespace

TEST_CASE("orbit rows walk the quarter rotation through all sectors") {
    DescriptiveSystem<Angle> sys = make_rotation_system(Angle::rational(1, 4), sector_probe());
    auto rows = orbit_rows(sys, Angle(), 5);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].phi == basis_vec(0, 4));
    CHECK(rows[1].phi == basis_vec(1, 4));
    CHECK(rows[2].phi == basis_vec(2, 4));
    CHECK(rows[3].phi == basis_vec(3, 4));
    CHECK(rows[4].phi == basis_vec(0, 4));
    CHECK(rows[4].x == Angle());
}

TEST_CASE("constant probe gives a constant orbit") {
    DescriptiveSystem<Angle> sys =
        make_doubling_system(constant_probe<Angle>(FeatureVector{{7.0}}));
    for (const auto& row : orbit_rows(sys, Angle::rational(1, 3), 4)) {
        CHECK(row.phi == FeatureVector{{7.0}});
    }
}

TEST_CASE("cat orbit on the 2-grid cycles three positions") {
    DescriptiveSystem<GridPoint> sys =
        make_cat_system(2, constant_probe<GridPoint>(FeatureVector{{1.0}}));
    auto rows = orbit_rows(sys, GridPoint(1, 0, 2), 4);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].x == GridPoint(1, 0, 2));
    CHECK(rows[1].x == GridPoint(1, 1, 2));
    CHECK(rows[2].x == GridPoint(0, 1, 2));
    CHECK(rows[3].x == GridPoint(1, 0, 2));
    CHECK(rows[3].phi == rows[0].phi);
}

TEST_CASE("descriptive periods of rotations") {
    DescriptiveSystem<Angle> quarter = make_rotation_system(Angle::rational(1, 4), sector_probe());
    CHECK(find_descriptive_period(quarter, Angle(), 100) == 4);
    CHECK(find_descriptive_period(quarter, Angle::rational(1, 3), 100) == 4);
    CHECK(find_descriptive_period(quarter, Angle::real(0.1), 100) == 4);

    DescriptiveSystem<Angle> half = make_rotation_system(Angle::rational(1, 2), sector_probe());
    CHECK(find_descriptive_period(half, Angle::rational(1, 8), 100) == 2);

    DescriptiveSystem<Angle> constant =
        make_doubling_system(constant_probe<Angle>(FeatureVector{{1.0}}));
    CHECK(find_descriptive_period(constant, Angle::real(0.37), 100) == 1);

    // Horizon miss reports absence, not an error.
    CHECK_FALSE(find_descriptive_period(quarter, Angle::rational(1, 8), 3).has_value());
    // A slow rotation keeps the seed in its sector, so the feature recurs at once.
    DescriptiveSystem<Angle> tiny = make_rotation_system(Angle::rational(1, 64), sector_probe());
    CHECK(find_descriptive_period(tiny, Angle::rational(1, 8), 3) == 1);
}

TEST_CASE("descriptive period is minimal") {
    DescriptiveSystem<Angle> sys =
        make_rotation_system(Angle::real(std::sqrt(2.0) / 2.0), sector_probe());
    Angle seed = Angle::real(0.05);
    auto m = find_descriptive_period(sys, seed, 1000);
    REQUIRE(m.has_value());
    const FeatureVector phi0 = sys.probe(seed);
    for (std::uint64_t j = 1; j < *m; ++j) {
        CHECK_FALSE(features_equal(phi0, sys.probe(sys.power(seed, j)), 0.0));
    }
}

TEST_CASE("classical periods on exact states") {
    DescriptiveSystem<Angle> quarter = make_rotation_system(Angle::rational(1, 4), sector_probe());
    CHECK(find_classical_period(quarter, Angle::rational(9, 40), 100) == 4);

    DescriptiveSystem<Angle> dbl = make_doubling_system(sector_probe());
    CHECK(find_classical_period(dbl, Angle::rational(1, 3), 100) == 2);
    CHECK(find_classical_period(dbl, Angle(), 100) == 1);

    DescriptiveSystem<GridPoint> cat3 =
        make_cat_system(3, constant_probe<GridPoint>(FeatureVector{{1.0}}));
    CHECK(find_classical_period(cat3, GridPoint(1, 0, 3), 100) == 4);

    DescriptiveSystem<GridPoint> cat256 =
        make_cat_system(256, constant_probe<GridPoint>(FeatureVector{{1.0}}));
    CHECK(find_classical_period(cat256, GridPoint(32, 32, 256), 500) == 6);
    CHECK(find_classical_period(cat256, GridPoint(32, 33, 256), 500) == 192);
    CHECK(find_classical_period(cat256, GridPoint(1, 0, 256), 500) == 192);
}

TEST_CASE("classical period search refuses inexact state") {
    DescriptiveSystem<Angle> quarter = make_rotation_system(Angle::rational(1, 4), sector_probe());
    CHECK_THROWS_AS(find_classical_period(quarter, Angle::real(0.1), 10), UnsupportedError);
    DescriptiveSystem<Angle> irrational =
        make_rotation_system(Angle::real(std::sqrt(2.0) / 2.0), sector_probe());
    CHECK_THROWS_AS(find_classical_period(irrational, Angle::rational(0, 1), 10),
                    UnsupportedError);

    PeriodReport<Angle> report = scan_periods(irrational, Angle::real(0.0), 1000);
    CHECK_FALSE(report.classical_supported);
    CHECK_FALSE(report.classical_period.has_value());
    CHECK(report.descriptive_period.has_value());
}

TEST_CASE("classical period bounds the descriptive period") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 12);
        std::int64_t p = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
        DescriptiveSystem<Angle> sys =
            make_rotation_system(Angle::rational(p, q), sector_probe());
        Angle theta = Angle::rational(static_cast<std::int64_t>(rng() % 96), 96);
        PeriodReport<Angle> report = scan_periods(sys, theta, 64);
        REQUIRE(report.classical_supported);
        REQUIRE(report.classical_period.has_value());
        REQUIRE(report.descriptive_period.has_value());
        CHECK(*report.descriptive_period <= *report.classical_period);
    }
}

TEST_CASE("periodic object sets over a rational sample") {
    DescriptiveSystem<Angle> quarter = make_rotation_system(Angle::rational(1, 4), sector_probe());
    Sample<Angle> sample;
    for (int i = 0; i < 8; ++i) sample.push_back(Angle::rational(i, 8));
    PeriodicObjectSets<Angle> sets = periodic_object_sets(quarter, sample, 8);

    REQUIRE(sets.classical_supported);
    CHECK(sets.classical_per_m[3].size() == 8);   // every point returns at m = 4
    CHECK(sets.descriptive_per_m[3].size() == 8);
    CHECK(sets.classical_per_m[0].empty());
    CHECK(sets.descriptive_per.size() == 8);
    CHECK(sets.classical_per.size() == 8);

    // Descriptive recurrence contains classical recurrence, member by member.
    for (std::uint64_t m = 1; m <= 8; ++m) {
        for (std::size_t idx : sets.classical_per_m[m - 1]) {
            const auto& dm = sets.descriptive_per_m[m - 1];
            CHECK(std::find(dm.begin(), dm.end(), idx) != dm.end());
        }
    }
}

TEST_CASE("periodic object sets fall back to descriptive-only on real samples") {
    DescriptiveSystem<Angle> sys =
        make_rotation_system(Angle::real(std::sqrt(2.0) / 2.0), sector_probe());
    Sample<Angle> sample;
    for (int i = 0; i < 20; ++i) sample.push_back(Angle::real(i / 20.0));
    PeriodicObjectSets<Angle> sets = periodic_object_sets(sys, sample, 500);
    CHECK_FALSE(sets.classical_supported);
    CHECK(sets.classical_per.empty());
    CHECK_FALSE(sets.descriptive_per.empty());
    CHECK_THROWS_AS(periodic_object_sets(sys, Sample<Angle>{}, 10), std::invalid_argument);
}

TEST_CASE("doubling fixed point lands in the first recurrence class") {
    DescriptiveSystem<Angle> dbl = make_doubling_system(sector_probe());
    PeriodicObjectSets<Angle> sets = periodic_object_sets(dbl, Sample<Angle>{Angle()}, 4);
    REQUIRE(sets.classical_supported);
    CHECK(sets.classical_per_m[0] == std::vector<std::size_t>{0});
}

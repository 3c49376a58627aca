#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include <catch2/catch_amalgamated.hpp>

#include <descdyn/systems.hpp>

using namespace descdyn;

TEST_CASE("rotation advances exactly on rational data") {
    CircleRotation quarter{Angle::rational(1, 4)};
    CHECK(quarter.apply(Angle()) == Angle::rational(1, 4));
    CHECK(quarter.apply(Angle::rational(7, 8)) == Angle::rational(1, 8));
    CHECK(quarter.apply(Angle::rational(1, 40), 1) == Angle::rational(11, 40));
    CHECK(quarter.apply(Angle::rational(1, 40), 4) == Angle::rational(1, 40));
}

TEST_CASE("rational rotation has exact period q") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 12);
        std::int64_t p = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
        CircleRotation rot{Angle::rational(p, q)};
        Angle theta = Angle::rational(static_cast<std::int64_t>(rng() % 97), 97);
        CHECK(rot.apply(theta, static_cast<std::uint64_t>(q)) == theta);
    }
}

TEST_CASE("doubling map composes and squares") {
    CHECK(double_angle(Angle::rational(1, 3)) == Angle::rational(2, 3));
    CHECK(double_angle(Angle::rational(2, 3)) == Angle::rational(1, 3));
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t den = 3 + static_cast<std::int64_t>(rng() % 1000);
        Angle theta = Angle::rational(static_cast<std::int64_t>(rng() % 1000), den);
        CHECK(double_angle(double_angle(theta)) == double_angle(theta, 2));
        Rational four_t = theta.rat() * Rational(4);
        CHECK(double_angle(theta, 2) == Angle::rational(four_t.frac()));
    }
}

TEST_CASE("grid points reduce mod n and reject bad moduli") {
    GridPoint p(-1, 5, 4);
    CHECK(p.a == 3);
    CHECK(p.b == 1);
    CHECK_THROWS_AS(GridPoint(0, 0, 0), std::invalid_argument);
    CHECK(GridPoint(2, 3, 4).str() == "2,3");
}

TEST_CASE("toroidal distance wraps around") {
    CHECK(toroidal_distance(GridPoint(0, 0, 256), GridPoint(0, 255, 256)) == 1.0);
    CHECK(toroidal_distance(GridPoint(0, 0, 256), GridPoint(128, 128, 256)) ==
          Catch::Approx(128.0 * std::sqrt(2.0)));
    CHECK_THROWS_AS(toroidal_distance(GridPoint(0, 0, 4), GridPoint(0, 0, 5)),
                    std::invalid_argument);
}

TEST_CASE("cat map single steps match the matrix") {
    CatMap big(256);
    CHECK(big.step(GridPoint(32, 32, 256)) == GridPoint(64, 96, 256));

    CatMap tiny(2);
    GridPoint p(1, 0, 2);
    p = tiny.step(p);
    CHECK(p == GridPoint(1, 1, 2));
    p = tiny.step(p);
    CHECK(p == GridPoint(0, 1, 2));
    p = tiny.step(p);
    CHECK(p == GridPoint(1, 0, 2));
}

TEST_CASE("cat map is a permutation with an exact inverse") {
    for (std::int64_t n : {1, 2, 3, 5, 8, 13, 16, 31, 64}) {
        CatMap map(n);
        std::set<std::pair<std::int64_t, std::int64_t>> images;
        for (std::int64_t a = 0; a < n; ++a) {
            for (std::int64_t b = 0; b < n; ++b) {
                GridPoint p(a, b, n);
                GridPoint q = map.step(p);
                images.insert({q.a, q.b});
                CHECK(map.inverse_step(q) == p);
            }
        }
        CHECK(images.size() == static_cast<std::size_t>(n * n));
    }
}

TEST_CASE("cat map powers agree with stepwise iteration") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 200);
        CatMap map(n);
        GridPoint p(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)),
                    static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)), n);
        std::uint64_t k = rng() % 40;
        GridPoint stepped = p;
        for (std::uint64_t i = 0; i < k; ++i) stepped = map.step(stepped);
        CHECK(map.apply(p, k) == stepped);
    }
}

TEST_CASE("matrix powers multiply out") {
    Mat2 m = CatMap::matrix();
    Mat2 m2 = Mat2::mulmod(m, m, 1000);
    CHECK(m2.a == 2);
    CHECK(m2.b == 3);
    CHECK(m2.c == 3);
    CHECK(m2.d == 5);
    CHECK(Mat2::powmod(m, 0, 7).is_identity(7));
    Mat2 naive = m;
    for (int k = 2; k <= 12; ++k) {
        naive = Mat2::mulmod(naive, m, 997);
        Mat2 fast = Mat2::powmod(m, static_cast<std::uint64_t>(k), 997);
        CHECK(naive.a == fast.a);
        CHECK(naive.b == fast.b);
        CHECK(naive.c == fast.c);
        CHECK(naive.d == fast.d);
    }
}

TEST_CASE("descriptive system powers satisfy the semigroup law") {
    DescriptiveSystem<Angle> rot = make_rotation_system(Angle::rational(3, 7), sector_probe());
    DescriptiveSystem<Angle> dbl = make_doubling_system(sector_probe());
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        Angle theta = Angle::rational(static_cast<std::int64_t>(rng() % 113), 113);
        std::uint64_t k1 = rng() % 1000;
        std::uint64_t k2 = rng() % 1000;
        CHECK(rot.power(theta, k1 + k2) == rot.power(rot.power(theta, k1), k2));
        std::uint64_t d1 = rng() % 30;
        std::uint64_t d2 = rng() % 30;
        CHECK(dbl.power(theta, d1 + d2) == dbl.power(dbl.power(theta, d1), d2));
    }
    CHECK(rot.exact);
    CHECK_FALSE(make_rotation_system(Angle::real(0.5), sector_probe()).exact);
}

TEST_CASE("unit shift and custom systems iterate stepwise") {
    DescriptiveSystem<double> shift = make_unit_shift_system(step_probe());
    CHECK(shift.power(0.25, 3) == 3.25);
    CHECK(shift.step(-1.0) == 0.0);

    DescriptiveSystem<Angle> custom = make_custom_system<Angle>(
        "triple", [](const Angle& t) { return t + t + t; }, sector_probe(), true);
    CHECK(custom.power(Angle::rational(1, 10), 2) == Angle::rational(9, 10));
    CHECK(custom.power(Angle::rational(1, 10), 0) == Angle::rational(1, 10));
}

TEST_CASE("point traits expose exactness and distance") {
    CHECK(PointTraits<Angle>::is_exact(Angle::rational(1, 3)));
    CHECK_FALSE(PointTraits<Angle>::is_exact(Angle::real(0.3)));
    CHECK(PointTraits<GridPoint>::is_exact(GridPoint(1, 1, 3)));
    CHECK_FALSE(PointTraits<double>::is_exact(0.5));
    CHECK(PointTraits<double>::distance(1.25, -0.75) == 2.0);
    CHECK(PointTraits<Angle>::distance(Angle::rational(0, 1), Angle::rational(1, 2)) ==
          Catch::Approx(std::numbers::pi));
}

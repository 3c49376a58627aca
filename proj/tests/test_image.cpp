#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <descdyn/image.hpp>

using namespace descdyn;

namespace {

// Independent period oracle: follow every grid cycle of (a, b) -> (a+b, a+2b)
// and take the least common multiple of the cycle lengths.
std::uint64_t cycle_lcm_period(std::int64_t n) {
    std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
    std::uint64_t acc = 1;
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            if (seen[static_cast<std::size_t>(a * n + b)]) continue;
            std::int64_t x = a;
            std::int64_t y = b;
            std::uint64_t len = 0;
            do {
                seen[static_cast<std::size_t>(x * n + y)] = true;
                std::int64_t nx = (x + y) % n;
                std::int64_t ny = (x + 2 * y) % n;
                x = nx;
                y = ny;
                ++len;
            } while (x != a || y != b);
            acc = std::lcm(acc, len);
        }
    }
    return acc;
}

std::vector<std::uint8_t> bytes_of(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("a one-pixel image round-trips byte for byte") {
    RasterImage red{1, 1, {255, 0, 0}};
    std::vector<std::uint8_t> saved = save_ppm(red);
    CHECK(saved == bytes_of(std::string("P6\n1 1\n255\n") + '\xff' + '\x00' + '\x00'));
    CHECK(load_ppm(saved) == red);
}

TEST_CASE("synthetic images survive a save and load cycle") {
    for (SyntheticKind kind :
         {SyntheticKind::Uniform, SyntheticKind::Checker, SyntheticKind::Gradient}) {
        RasterImage img = make_synthetic(kind, 7);
        RasterImage back = load_ppm(save_ppm(img));
        CHECK(back == img);
        CHECK(save_ppm(back) == save_ppm(img));
    }
}

TEST_CASE("payload bytes that look like whitespace are preserved") {
    // Exactly one separator byte precedes the payload, so a payload that
    // starts with '\n' or ' ' must come back untouched.
    RasterImage tricky{1, 1, {'\n', ' ', '#'}};
    CHECK(load_ppm(save_ppm(tricky)) == tricky);
}

TEST_CASE("header comments load but are never written back") {
    std::vector<std::uint8_t> commented = bytes_of("P6\n# made by hand\n2 1\n# again\n255\nabcdef");
    RasterImage img = load_ppm(commented);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.pixels == bytes_of("abcdef"));
    CHECK(save_ppm(img) == bytes_of("P6\n2 1\n255\nabcdef"));
}

TEST_CASE("malformed streams report where parsing stopped") {
    auto offset_of = [](const std::vector<std::uint8_t>& bytes) -> std::size_t {
        try {
            load_ppm(bytes);
        } catch (const PpmError& e) {
            return e.offset;
        }
        FAIL("expected a parse error");
        return 0;
    };

    CHECK(offset_of(bytes_of("P5\n1 1\n255\nabc")) == 0);   // wrong magic
    CHECK(offset_of(bytes_of("")) == 0);                    // empty
    CHECK(offset_of(bytes_of("P6\n")) == 3);                // width missing
    CHECK(offset_of(bytes_of("P6\n2 2\n100\n")) == 7);      // wrong maxval, at its token
    CHECK(offset_of(bytes_of("P6\n0 2\n255\n")) == 6);      // zero dimension
    CHECK(offset_of(bytes_of("P6\n1 1\n255\nab")) == 13);   // short payload: at end
    CHECK(offset_of(bytes_of("P6\n1 1\n255\nabcd")) == 14); // extra byte: after payload
    CHECK(offset_of(bytes_of("P6\n99999999 1\n255\n")) == 9);  // oversized value

    CHECK_THROWS_AS(load_ppm(bytes_of("P6\n1 1\n255\nab")), PpmError);
    CHECK_THROWS_MATCHES(load_ppm(bytes_of("P6\n1 1\n255\nab")), PpmError,
                         Catch::Matchers::Message("truncated pixel payload (byte 13)"));
}

TEST_CASE("non-square images load but cannot be shuffled or tracked") {
    RasterImage wide = load_ppm(bytes_of("P6\n2 1\n255\nabcdef"));
    CHECK_FALSE(wide.square());
    CHECK_THROWS_AS(cat_shuffle(wide, 1), std::invalid_argument);
    CHECK_THROWS_AS(track_pixels(wide, 0, 0, 1, 0, 4), std::invalid_argument);
}

TEST_CASE("shuffles compose additively and invert at the period") {
    RasterImage img = make_synthetic(SyntheticKind::Gradient, 8);
    CHECK(cat_shuffle(img, 0) == img);
    RasterImage two = cat_shuffle(cat_shuffle(img, 1), 1);
    CHECK(two == cat_shuffle(img, 2));
    RasterImage five = cat_shuffle(cat_shuffle(img, 2), 3);
    CHECK(five == cat_shuffle(img, 5));

    for (std::int64_t n : {2, 3, 4, 8, 16}) {
        RasterImage grad = make_synthetic(SyntheticKind::Gradient, n);
        CHECK(cat_shuffle(grad, arnold_period(n)) == grad);
    }
}

TEST_CASE("a single shuffle moves each pixel one cat step") {
    RasterImage img = make_synthetic(SyntheticKind::Gradient, 5);
    RasterImage out = cat_shuffle(img, 1);
    for (std::int64_t a = 0; a < 5; ++a) {
        for (std::int64_t b = 0; b < 5; ++b) {
            GridPoint moved = cat_step(CatMap(5), GridPoint(a, b, 5));
            std::size_t src = pixel_index(img, a, b);
            std::size_t dst = pixel_index(out, moved.a, moved.b);
            CHECK(out.pixels[dst] == img.pixels[src]);
            CHECK(out.pixels[dst + 1] == img.pixels[src + 1]);
            CHECK(out.pixels[dst + 2] == img.pixels[src + 2]);
        }
    }
}

TEST_CASE("shuffling permutes colors without creating or losing any") {
    RasterImage img = make_synthetic(SyntheticKind::Gradient, 9);
    RasterImage out = cat_shuffle(img, 7);
    auto histogram = [](const RasterImage& r) {
        std::map<std::uint8_t, int> h;
        for (std::uint8_t v : r.pixels) ++h[v];
        return h;
    };
    CHECK(histogram(out) == histogram(img));
    CHECK_FALSE(out == img);  // 7 steps genuinely scramble a 9-grid
}

TEST_CASE("grid periods match the cycle-structure oracle") {
    CHECK(arnold_period(1) == 1);
    CHECK(arnold_period(2) == 3);
    CHECK(arnold_period(3) == 4);
    CHECK(arnold_period(256) == 192);
    for (std::int64_t n = 1; n <= 64; ++n) {
        INFO("n = " << n);
        CHECK(arnold_period(n) == cycle_lcm_period(n));
    }
    CHECK_THROWS_AS(arnold_period(0), std::invalid_argument);
}

TEST_CASE("tracking on a uniform image never shows a color gap") {
    RasterImage img = make_synthetic(SyntheticKind::Uniform, 8);
    TrackRecord record = track_pixels(img, 1, 2, 5, 7, 20);
    REQUIRE(record.steps.size() == 21);
    for (const TrackStep& s : record.steps) {
        CHECK(s.gap_carried == 0.0);
        CHECK(s.gap_sampled == 0.0);
        CHECK(s.metric_distance > 0.0);  // distinct pixels stay distinct
    }
}

TEST_CASE("tracking replays the cat orbit step by step") {
    RasterImage img = make_synthetic(SyntheticKind::Checker, 4);
    TrackRecord record = track_pixels(img, 0, 0, 1, 2, 12);
    REQUIRE(record.steps.size() == 13);
    CHECK(record.seed1 == GridPoint(0, 0, 4));
    CHECK(record.seed2 == GridPoint(1, 2, 4));

    const double carried =
        feature_gap(pixel_color(img, record.seed1), pixel_color(img, record.seed2));
    GridPoint p1 = record.seed1;
    GridPoint p2 = record.seed2;
    CatMap map(4);
    for (std::uint64_t t = 0; t <= 12; ++t) {
        const TrackStep& s = record.steps[t];
        CHECK(s.t == t);
        CHECK(s.p1 == p1);
        CHECK(s.p2 == p2);
        CHECK(s.metric_distance == toroidal_distance(p1, p2));
        CHECK(s.gap_carried == carried);  // carried colors never change
        CHECK(s.gap_sampled == feature_gap(pixel_color(img, p1), pixel_color(img, p2)));
        p1 = map.step(p1);
        p2 = map.step(p2);
    }
}

TEST_CASE("both tracked pixels are home again at the grid period") {
    RasterImage img = make_synthetic(SyntheticKind::Gradient, 256);
    TrackRecord record = track_pixels(img, 32, 32, 32, 33, 192);
    REQUIRE(record.steps.size() == 193);
    CHECK(record.steps[192].p1 == GridPoint(32, 32, 256));
    CHECK(record.steps[192].p2 == GridPoint(32, 33, 256));
    CHECK(record.steps[0].gap_sampled == record.steps[192].gap_sampled);
    CHECK(record.steps[0].metric_distance == record.steps[192].metric_distance);
    // The first pixel's own orbit closes every 6 steps.
    CHECK(record.steps[6].p1 == GridPoint(32, 32, 256));
    CHECK(record.steps[12].p1 == GridPoint(32, 32, 256));
    CHECK_FALSE(record.steps[6].p2 == GridPoint(32, 33, 256));
}

TEST_CASE("tracking validates its seeds") {
    RasterImage img = make_synthetic(SyntheticKind::Uniform, 4);
    CHECK_THROWS_AS(track_pixels(img, 0, 0, 0, 0, 4), std::domain_error);  // equal seeds
    CHECK_THROWS_AS(track_pixels(img, 0, 0, 4, 0, 4), std::domain_error);  // out of range
    CHECK_THROWS_AS(track_pixels(img, -1, 0, 1, 0, 4), std::domain_error);
    CHECK_THROWS_AS(track_pixels(img, GridPoint(0, 0, 5), GridPoint(1, 0, 5), 4),
                    std::domain_error);  // modulus mismatch
}

TEST_CASE("the gap report lists every step and names both maxima") {
    RasterImage img = make_synthetic(SyntheticKind::Gradient, 4);
    TrackRecord record = track_pixels(img, 0, 0, 1, 0, 2);
    std::string report = gap_report(record);

    std::istringstream lines(report);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,x1,y1,x2,y2,metric_distance,gap_carried,gap_sampled");
    std::getline(lines, line);
    CHECK(line.rfind("0,0,0,1,0,1,", 0) == 0);  // t=0 row starts with the seeds
    int rows = 1;
    int comments = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("# max gap_", 0) == 0) {
            ++comments;
        } else {
            ++rows;
        }
    }
    CHECK(rows == 3);  // t = 0, 1, 2
    CHECK(comments == 2);
    CHECK(report.find("# max gap_carried ") != std::string::npos);
    CHECK(report.find("# max gap_sampled ") != std::string::npos);
    CHECK(report.find(" first attained at t=") != std::string::npos);
}

TEST_CASE("image files write to disk and read back") {
    RasterImage img = make_synthetic(SyntheticKind::Checker, 6);
    std::string path = "test_image_roundtrip.ppm";
    save_ppm_file(img, path);
    CHECK(load_ppm_file(path) == img);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_ppm_file("no_such_file.ppm"), std::runtime_error);
}

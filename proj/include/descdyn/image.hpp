#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "feature.hpp"
#include "systems.hpp"

namespace descdyn {

// Row-major RGB raster, one byte per channel.  Coordinates follow the grid
// convention (a, b) = (column, row) with the origin at the top-left.
struct RasterImage {
    std::int64_t width = 0;
    std::int64_t height = 0;
    std::vector<std::uint8_t> pixels;  // 3 * width * height bytes

    bool operator==(const RasterImage&) const = default;
    bool square() const { return width == height && width > 0; }
};

inline std::size_t pixel_index(const RasterImage& img, std::int64_t a, std::int64_t b) {
    return static_cast<std::size_t>((b * img.width + a) * 3);
}

inline FeatureVector pixel_color(const RasterImage& img, const GridPoint& p) {
    std::size_t i = pixel_index(img, p.a, p.b);
    return FeatureVector{{static_cast<double>(img.pixels[i]),
                          static_cast<double>(img.pixels[i + 1]),
                          static_cast<double>(img.pixels[i + 2])}};
}

// Parse failure carrying the byte offset the decoder had reached.
struct PpmError : std::runtime_error {
    std::size_t offset = 0;
    PpmError(const std::string& what, std::size_t at)
        : std::runtime_error(what + " (byte " + std::to_string(at) + ")"), offset(at) {}
};

// Binary P6 with maxval 255.  Header comments (# to end of line) are
// tolerated on load; save never emits them, so save(load(b)) is canonical
// and load(save(img)) is lossless.
inline std::vector<std::uint8_t> save_ppm(const RasterImage& img) {
    if (img.width < 1 || img.height < 1) throw std::invalid_argument("cannot save empty image");
    std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                         "\n255\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.insert(bytes.end(), img.pixels.begin(), img.pixels.end());
    return bytes;
}

inline RasterImage load_ppm(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 0;
    const std::size_t n = bytes.size();
    auto is_space = [](std::uint8_t c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    };
    auto skip_separators = [&] {
        while (pos < n) {
            if (is_space(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < n && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    };
    auto read_int = [&](const char* name) -> std::int64_t {
        skip_separators();
        if (pos >= n || bytes[pos] < '0' || bytes[pos] > '9') {
            throw PpmError(std::string("expected ") + name, pos);
        }
        std::int64_t value = 0;
        while (pos < n && bytes[pos] >= '0' && bytes[pos] <= '9') {
            value = value * 10 + (bytes[pos] - '0');
            if (value > (1 << 20)) throw PpmError(std::string(name) + " too large", pos);
            ++pos;
        }
        return value;
    };

    if (n < 2 || bytes[0] != 'P' || bytes[1] != '6') throw PpmError("not a P6 stream", 0);
    pos = 2;
    std::int64_t width = read_int("width");
    std::int64_t height = read_int("height");
    if (width < 1 || height < 1) throw PpmError("zero image dimension", pos);
    if (width > (1 << 14) || height > (1 << 14)) throw PpmError("image dimension too large", pos);
    skip_separators();
    std::size_t maxval_at = pos;
    std::int64_t maxval = read_int("maxval");
    if (maxval != 255) throw PpmError("maxval must be 255", maxval_at);
    if (pos >= n || !is_space(bytes[pos])) throw PpmError("expected whitespace before payload", pos);
    ++pos;  // exactly one separator byte, then raw pixels

    std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
    if (n - pos < expected) throw PpmError("truncated pixel payload", n);
    if (n - pos > expected) throw PpmError("trailing data after pixel payload", pos + expected);
    RasterImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
    return img;
}

inline RasterImage load_ppm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_ppm(bytes);
}

inline void save_ppm_file(const RasterImage& img, const std::string& path) {
    std::vector<std::uint8_t> bytes = save_ppm(img);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + path);
}

// ---------------------------------------------------------------------
// Cat-map shuffling

// Smallest t >= 1 whose t-th cat step is the identity permutation of the
// n-by-n grid, computed as the order of the step matrix mod n.
inline std::uint64_t arnold_period(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("grid size must be positive");
    const Mat2 step = Mat2::powmod(CatMap::matrix(), 1, n);  // reduced mod n
    Mat2 power = step;
    for (std::uint64_t t = 1; t <= 12 * static_cast<std::uint64_t>(n); ++t) {
        if (power.is_identity(n)) return t;
        power = Mat2::mulmod(power, step, n);
    }
    throw std::logic_error("matrix order not found within bound");
}

// Moves the pixel at p to cat_step^t(p).  The zero-step shuffle is the
// identity and shuffles compose additively in t.
inline RasterImage cat_shuffle(const RasterImage& img, std::uint64_t t) {
    if (!img.square()) throw std::invalid_argument("cat shuffle needs a square image");
    const std::int64_t n = img.width;
    const Mat2 m = Mat2::powmod(CatMap(n).matrix(), t, n);
    RasterImage out;
    out.width = n;
    out.height = n;
    out.pixels.resize(img.pixels.size());
    for (std::int64_t b = 0; b < n; ++b) {
        for (std::int64_t a = 0; a < n; ++a) {
            std::int64_t a2 = (m.a * a + m.b * b) % n;
            std::int64_t b2 = (m.c * a + m.d * b) % n;
            std::size_t src = pixel_index(img, a, b);
            std::size_t dst = pixel_index(out, a2, b2);
            out.pixels[dst] = img.pixels[src];
            out.pixels[dst + 1] = img.pixels[src + 1];
            out.pixels[dst + 2] = img.pixels[src + 2];
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// Pixel tracking

// One tracked step: where the two pixels are, how far apart they sit on the
// torus, and their color gap in both accounting modes.  The carried gap
// treats the colors as properties of the moving pixels (fixed at the seeds);
// the sampled gap re-reads the still image at the current positions.
struct TrackStep {
    std::uint64_t t = 0;
    GridPoint p1{};
    GridPoint p2{};
    double metric_distance = 0.0;
    double gap_carried = 0.0;
    double gap_sampled = 0.0;
};

struct TrackRecord {
    GridPoint seed1{};
    GridPoint seed2{};
    std::vector<TrackStep> steps;  // t = 0..T inclusive
};

inline TrackRecord track_pixels(const RasterImage& img, const GridPoint& seed1,
                                const GridPoint& seed2, std::uint64_t horizon) {
    if (!img.square()) throw std::invalid_argument("pixel tracking needs a square image");
    const std::int64_t n = img.width;
    if (seed1.n != n || seed2.n != n) {
        throw std::domain_error("seed modulus does not match image size");
    }
    if (seed1 == seed2) throw std::domain_error("seeds must be distinct");

    const CatMap map(n);
    const double carried = feature_gap(pixel_color(img, seed1), pixel_color(img, seed2));
    TrackRecord record;
    record.seed1 = seed1;
    record.seed2 = seed2;
    GridPoint p1 = seed1;
    GridPoint p2 = seed2;
    for (std::uint64_t t = 0; t <= horizon; ++t) {
        TrackStep step;
        step.t = t;
        step.p1 = p1;
        step.p2 = p2;
        step.metric_distance = toroidal_distance(p1, p2);
        step.gap_carried = carried;
        step.gap_sampled = feature_gap(pixel_color(img, p1), pixel_color(img, p2));
        record.steps.push_back(step);
        p1 = map.step(p1);
        p2 = map.step(p2);
    }
    return record;
}

// Raw-coordinate entry point so out-of-range seeds are rejected instead of
// silently wrapped.
inline TrackRecord track_pixels(const RasterImage& img, std::int64_t x1, std::int64_t y1,
                                std::int64_t x2, std::int64_t y2, std::uint64_t horizon) {
    if (!img.square()) throw std::invalid_argument("pixel tracking needs a square image");
    const std::int64_t n = img.width;
    for (std::int64_t v : {x1, y1, x2, y2}) {
        if (v < 0 || v >= n) throw std::domain_error("seed coordinate out of range");
    }
    return track_pixels(img, GridPoint(x1, y1, n), GridPoint(x2, y2, n), horizon);
}

// CSV rows (t, x1, y1, x2, y2, metric_distance, gap_carried, gap_sampled)
// followed by comment lines naming the first time each gap series attains
// its maximum.
inline std::string gap_report(const TrackRecord& record) {
    std::string out = "t,x1,y1,x2,y2,metric_distance,gap_carried,gap_sampled\n";
    std::size_t argmax_carried = 0;
    std::size_t argmax_sampled = 0;
    for (std::size_t i = 0; i < record.steps.size(); ++i) {
        const TrackStep& s = record.steps[i];
        out += std::to_string(s.t) + "," + std::to_string(s.p1.a) + "," + std::to_string(s.p1.b) +
               "," + std::to_string(s.p2.a) + "," + std::to_string(s.p2.b) + "," +
               format_real(s.metric_distance) + "," + format_real(s.gap_carried) + "," +
               format_real(s.gap_sampled) + "\n";
        if (s.gap_carried > record.steps[argmax_carried].gap_carried) argmax_carried = i;
        if (s.gap_sampled > record.steps[argmax_sampled].gap_sampled) argmax_sampled = i;
    }
    if (!record.steps.empty()) {
        out += "# max gap_carried " + format_real(record.steps[argmax_carried].gap_carried) +
               " first attained at t=" + std::to_string(record.steps[argmax_carried].t) + "\n";
        out += "# max gap_sampled " + format_real(record.steps[argmax_sampled].gap_sampled) +
               " first attained at t=" + std::to_string(record.steps[argmax_sampled].t) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------
// Synthetic test images

enum class SyntheticKind { Uniform, Checker, Gradient };

inline SyntheticKind parse_synthetic_kind(const std::string& name) {
    if (name == "uniform") return SyntheticKind::Uniform;
    if (name == "checker") return SyntheticKind::Checker;
    if (name == "gradient") return SyntheticKind::Gradient;
    throw std::invalid_argument("unknown synthetic image kind: " + name);
}

inline RasterImage make_synthetic(SyntheticKind kind, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("image size must be positive");
    RasterImage img;
    img.width = n;
    img.height = n;
    img.pixels.resize(static_cast<std::size_t>(n * n * 3));
    auto scale = [n](std::int64_t v) -> std::uint8_t {
        if (n == 1) return 0;
        return static_cast<std::uint8_t>(v * 255 / (n - 1));
    };
    for (std::int64_t b = 0; b < n; ++b) {
        for (std::int64_t a = 0; a < n; ++a) {
            std::size_t i = pixel_index(img, a, b);
            switch (kind) {
                case SyntheticKind::Uniform:
                    img.pixels[i] = img.pixels[i + 1] = img.pixels[i + 2] = 128;
                    break;
                case SyntheticKind::Checker: {
                    std::uint8_t v = ((a + b) % 2 == 0) ? 0 : 255;
                    img.pixels[i] = img.pixels[i + 1] = img.pixels[i + 2] = v;
                    break;
                }
                case SyntheticKind::Gradient:
                    img.pixels[i] = scale(a);
                    img.pixels[i + 1] = scale(b);
                    img.pixels[i + 2] = scale((a + b) % n);
                    break;
            }
        }
    }
    return img;
}

}  // namespace descdyn

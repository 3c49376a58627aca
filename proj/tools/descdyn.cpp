// Command-line front end: every experiment as a subcommand, every run
// replayable from the header it prints.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <descdyn/descdyn.hpp>

namespace {

using namespace descdyn;

struct CommonOpts {
    RunConfig config;
    std::string out;  // empty means stdout
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.config.seed, "sampling seed, always recorded in the output");
    cmd->add_option("--out", o.out, "write the report to this file instead of stdout");
    cmd->add_option("--epsilon", o.config.epsilon, "feature tolerance for real-valued probes");
    cmd->add_option("--basis-arcs", o.config.arcs, "equal arcs in the circle basis")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--samples", o.config.samples, "interior sample points per arc")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", o.config.horizon, "transitivity search bound");
    cmd->add_option("--mmax", o.config.m_max, "period search bound");
    cmd->add_option("--delta", o.config.delta, "sensitivity separation threshold");
    cmd->add_option("--radius", o.config.radius, "sensitivity perturbation radius in radians");
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out + " for writing");
    f << text;
    if (!f) throw std::runtime_error("short write to " + out);
}

// P6 with the run header embedded as comment lines, so image outputs carry
// their configuration too.  Any PPM reader skips them.
void save_frame(const RasterImage& img, const std::string& header, const std::string& path) {
    std::string head = "P6\n" + header + std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n255\n";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f.write(head.data(), static_cast<std::streamsize>(head.size()));
    f.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (!f) throw std::runtime_error("short write to " + path);
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<std::int64_t> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) values.push_back(parse_i64(item, what));
    if (values.empty()) throw std::runtime_error("empty " + what + " list");
    return values;
}

int cmd_table1(const CommonOpts& o) {
    emit(table1_csv(o.config), o.out);
    return 0;
}

int cmd_rotation(const CommonOpts& o, const std::string& lambda_text) {
    Angle lambda = parse_angle_literal(lambda_text);
    emit(rotation_report(o.config, run_rotation(o.config, lambda)), o.out);
    return 0;
}

int cmd_banks(const CommonOpts& o, const std::string& system, const std::string& lambda_text,
              const std::string& probe_name, bool metric) {
    Probe<Angle> probe = circle_probe_by_name(probe_name);
    DescriptiveSystem<Angle> sys;
    ArcImage image;
    std::string label;
    if (system == "doubling") {
        sys = make_doubling_system(std::move(probe));
        image = doubling_arc_image();
        label = "doubling-map";
    } else if (system == "rotation") {
        Angle lambda = parse_angle_literal(lambda_text);
        sys = make_rotation_system(lambda, std::move(probe));
        image = rotation_arc_image(lambda);
        label = "rotation(" + lambda.str() + ")";
    } else {
        throw std::runtime_error("unknown system: " + system);
    }
    BanksResult result = run_banks(o.config, sys, image);
    emit(banks_report(o.config, result, label, probe_name, metric), o.out);
    return result.expected ? 0 : 1;
}

int cmd_cat(const CommonOpts& o, const std::string& input, const std::string& synthetic,
            std::int64_t size, const std::string& iterations, std::int64_t period_n,
            const std::string& track, std::int64_t steps) {
    const std::string header = o.config.header("cat");
    bool did_anything = false;
    std::string text;

    if (period_n > 0) {
        text += "grid-size " + std::to_string(period_n) + "\n";
        text += "period " + std::to_string(arnold_period(period_n)) + "\n";
        did_anything = true;
    }

    RasterImage img;
    bool have_image = false;
    if (!input.empty()) {
        img = load_ppm_file(input);
        have_image = true;
    } else if (!synthetic.empty()) {
        img = make_synthetic(parse_synthetic_kind(synthetic), size);
        have_image = true;
    }

    if (!iterations.empty()) {
        if (!have_image) throw std::runtime_error("--iterations needs --input or --synthetic");
        std::string stem = o.out.empty() ? "cat" : o.out;
        if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".ppm") == 0) {
            stem.resize(stem.size() - 4);
        }
        for (std::int64_t t : parse_int_list(iterations, "iteration")) {
            if (t < 0) throw std::runtime_error("iteration counts must be nonnegative");
            RasterImage frame = cat_shuffle(img, static_cast<std::uint64_t>(t));
            std::string path = stem + "_t" + std::to_string(t) + ".ppm";
            save_frame(frame, header, path);
            text += "frame t=" + std::to_string(t) + " " + path + "\n";
        }
        did_anything = true;
    }

    if (!track.empty()) {
        if (!have_image) throw std::runtime_error("--track needs --input or --synthetic");
        std::vector<std::int64_t> c = parse_int_list(track, "track coordinate");
        if (c.size() != 4) throw std::runtime_error("--track needs x1,y1,x2,y2");
        if (steps < 0) throw std::runtime_error("--steps must be nonnegative");
        TrackRecord record =
            track_pixels(img, c[0], c[1], c[2], c[3], static_cast<std::uint64_t>(steps));
        text += gap_report(record);
        did_anything = true;
    }

    if (!did_anything) {
        throw std::runtime_error("nothing to do: pass --iterations, --period, or --track");
    }
    if (iterations.empty()) {
        emit(header + text, o.out);
    } else {
        std::cout << header << text;  // --out named the frame stem above
    }
    return 0;
}

int cmd_conjugacy(const CommonOpts& o, const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open " + config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    LoadedInstance loaded = load_conjugacy_instance(parse_config(buffer.str()));

    std::string text = o.config.header("conjugacy");
    text += "# config=" + config_path + "\n";
    text += "# check-horizon=" + std::to_string(loaded.params.commute_horizon) + "\n";
    text += "# check-mmax=" + std::to_string(loaded.params.m_max) + "\n";
    text += "# check-epsilon=" + format_real(loaded.params.tol.epsilon) + "\n";

    bool violation = false;
    std::visit(
        [&](const auto& inst) {
            auto outcome = run_conjugacy(inst, loaded.params);
            violation = outcome.lemma_violation;
            text += conjugacy_report(inst, outcome, loaded.params);
        },
        loaded.instance);
    emit(text, o.out);
    return violation ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Descriptive-proximity dynamical systems toolkit"};
    app.require_subcommand(1);

    CommonOpts table1_opts;
    CLI::App* table1 = app.add_subcommand("table1", "wavelength nearness relation matrix as CSV");
    add_common(table1, table1_opts);

    CommonOpts rotation_opts;
    std::string rotation_lambda;
    CLI::App* rotation =
        app.add_subcommand("rotation", "transitivity and periodicity of a circle rotation");
    add_common(rotation, rotation_opts);
    rotation->add_option("--lambda", rotation_lambda, "rotation step in turns, p/q or decimal")
        ->required();

    CommonOpts banks_opts;
    std::string banks_system = "doubling";
    std::string banks_lambda = "1/4";
    std::string banks_probe = "constant";
    bool banks_metric = false;
    CLI::App* banks = app.add_subcommand(
        "banks", "doubling map under a constant probe: transitive, dense, never separating");
    add_common(banks, banks_opts);
    banks->add_option("--system", banks_system, "doubling or rotation")
        ->check(CLI::IsMember({"doubling", "rotation"}));
    banks->add_option("--lambda", banks_lambda, "rotation step when --system rotation");
    banks->add_option("--probe", banks_probe, "probe name (constant, sectorN, position)");
    banks->add_flag("--metric", banks_metric,
                    "append the topological/metric comparison to the report");

    CommonOpts cat_opts;
    std::string cat_input, cat_synthetic, cat_iterations, cat_track;
    std::int64_t cat_size = 256;
    std::int64_t cat_period = 0;
    std::int64_t cat_steps = 0;
    CLI::App* cat = app.add_subcommand(
        "cat", "grid shuffling and pixel tracking; coordinates are (column, row) from top-left");
    add_common(cat, cat_opts);
    CLI::Option* input_opt =
        cat->add_option("--input", cat_input, "square binary P6 image to shuffle or track");
    cat->add_option("--synthetic", cat_synthetic, "generate the image instead")
        ->check(CLI::IsMember({"uniform", "checker", "gradient"}))
        ->excludes(input_opt);
    cat->add_option("--size", cat_size, "synthetic image side length")->check(CLI::PositiveNumber);
    cat->add_option("--iterations", cat_iterations,
                    "comma-separated shuffle counts; writes one frame per value");
    cat->add_option("--period", cat_period, "print the shuffle period of an n-by-n grid")
        ->check(CLI::PositiveNumber);
    CLI::Option* track_opt =
        cat->add_option("--track", cat_track, "x1,y1,x2,y2 seed pixels to follow");
    cat->add_option("--steps", cat_steps, "steps to track")->needs(track_opt);

    CommonOpts conj_opts;
    std::string conj_config;
    CLI::App* conjugacy =
        app.add_subcommand("conjugacy", "commutation check and transport of chaos properties");
    add_common(conjugacy, conj_opts);
    conjugacy->add_option("--config", conj_config, "instance description file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (table1->parsed()) return cmd_table1(table1_opts);
        if (rotation->parsed()) return cmd_rotation(rotation_opts, rotation_lambda);
        if (banks->parsed()) {
            return cmd_banks(banks_opts, banks_system, banks_lambda, banks_probe, banks_metric);
        }
        if (cat->parsed()) {
            return cmd_cat(cat_opts, cat_input, cat_synthetic, cat_size, cat_iterations,
                           cat_period, cat_track, cat_steps);
        }
        if (conjugacy->parsed()) return cmd_conjugacy(conj_opts, conj_config);
    } catch (const std::exception& e) {
        std::cerr << "descdyn: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

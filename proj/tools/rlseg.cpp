// rlseg: command line front end.

#define RLSEG_DEFINE_ALLOC_TRACKER
#include "rlseg/alloc_tracker.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rlseg/json_io.hpp"
#include "rlseg/rlseg.hpp"

using namespace rlseg;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, invalid_input = 1, config_error = 2 };

struct Options {
    std::size_t jobs = 1;
    std::string config_path;
    std::string output;
    std::vector<std::string> inputs;
    std::string overlay;
    std::string details;
    bool ascii = false;
    std::vector<std::size_t> rows;
    std::size_t window = 0;
    double overlap = 0.5;
    bool misses_only = false;
    std::size_t repeat = 1;
};

PipelineConfig load_pipeline_config(const std::string& path)
{
    if (path.empty())
        return {};
    try {
        return config_from_json(read_json_file(path));
    } catch (const FormatError& e) {
        throw ConfigError(e.what());
    }
}

// Output path for one input of a batch: with a single input the -o value is the file itself,
// otherwise it is a directory that receives <stem><ext>.
std::string output_for(const Options& o, const std::string& input, const char* ext)
{
    if (o.inputs.size() == 1)
        return o.output;
    fs::create_directories(o.output);
    return (fs::path(o.output) / fs::path(input).stem()).string() + ext;
}

// Runs fn over every input on o.jobs threads; returns the worst exit code seen.
template <class Fn>
int for_each_input(const Options& o, Fn fn)
{
    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{ok};
    std::mutex err_mu;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < o.inputs.size();) {
            int code = ok;
            std::string msg;
            try {
                fn(o.inputs[i]);
            } catch (const ConfigError& e) {
                code = config_error, msg = e.what();
            } catch (const InfeasibleSpec& e) {
                code = config_error, msg = e.what();
            } catch (const std::exception& e) {
                code = invalid_input, msg = e.what();
            }
            if (code != ok) {
                std::lock_guard lock(err_mu);
                std::cerr << "rlseg: " << o.inputs[i] << ": " << msg << "\n";
                int seen = worst.load();
                while (code > seen && !worst.compare_exchange_weak(seen, code)) {
                }
            }
        }
    };
    const std::size_t n = std::max<std::size_t>(1, std::min(o.jobs, o.inputs.size()));
    std::vector<std::jthread> pool;
    for (std::size_t k = 1; k < n; ++k)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    return worst.load();
}

int cmd_encode(const Options& o)
{
    return for_each_input(o, [&](const std::string& in) {
        save_rlc(output_for(o, in, ".rlc"), encode_bitmap(load_pbm(in)));
    });
}

int cmd_decode(const Options& o)
{
    return for_each_input(o, [&](const std::string& in) {
        save_pbm(output_for(o, in, ".pbm"), decode_bitmap(load_rlc(in)), o.ascii);
    });
}

json details_json(const PipelineResult& res)
{
    json seps = json::array();
    for (const auto& s : res.separators)
        seps.push_back(separator_to_json(s));
    json blocks = json::array();
    for (const auto& b : res.blocks)
        blocks.push_back({{"rect", rect_to_json(b.rect)}, {"regions", regions_to_json(b.regions)}});
    return {{"page_regions", regions_to_json(res.page_regions)}, {"separators", seps}, {"blocks", blocks}};
}

int cmd_segment(const Options& o)
{
    const PipelineConfig cfg = load_pipeline_config(o.config_path);
    cfg.validate();
    return for_each_input(o, [&](const std::string& in) {
        const RunMatrix r = load_rlc(in);
        const auto res = run_pipeline_detailed(r, cfg);
        write_json_file(output_for(o, in, ".json"), tree_to_json(res.tree));
        if (!o.details.empty())
            write_json_file(o.inputs.size() == 1 ? o.details : output_for(o, in, "_details.json"),
                            details_json(res));
        if (!o.overlay.empty()) {
            Bitmap page = decode_bitmap(r);
            draw_overlay(page, res.tree);
            save_pbm(o.inputs.size() == 1 ? o.overlay : output_for(o, in, "_overlay.pbm"), page);
        }
    });
}

int cmd_toggle(const Options& o)
{
    const RunMatrix r = load_rlc(o.inputs.at(0));
    json out;
    RunMatrix result;
    if (!o.rows.empty()) {
        if (o.rows.size() != 2 || o.rows[0] > o.rows[1])
            throw ConfigError("--rows takes TOP BOTTOM with TOP <= BOTTOM");
        const RowRange range{o.rows[0], o.rows[1]};
        result = toggle_region(r, range);
        out = {{"toggled", json::array({{{"top", range.top}, {"bottom", range.bottom}}})}};
    } else {
        const std::size_t window = o.window ? o.window : default_smooth_window;
        auto norm = normalize_document(r, window);
        out = regions_to_json(norm.regions);
        result = std::move(norm.matrix);
    }
    if (!o.output.empty())
        save_rlc(o.output, result);
    std::cout << out.dump(2) << "\n";
    return ok;
}

int cmd_gen(const Options& o)
{
    const LayoutSpec spec = layout_from_json(read_json_file(o.inputs.at(0)));
    const GeneratedDocument doc = generate(spec);
    save_pbm(o.output + ".pbm", doc.bitmap);
    save_rlc(o.output + ".rlc", encode_bitmap(doc.bitmap));
    write_json_file(o.output + "_gt.json", truth_to_json(doc.truth));
    write_json_file(o.output + "_tree.json", tree_to_json(doc.tree));
    return ok;
}

int cmd_eval(const Options& o)
{
    const auto detected = detected_lines_from_json(read_json_file(o.inputs.at(0)));
    const auto truth = truth_from_json(read_json_file(o.inputs.at(1)));
    std::cout << report_to_json(accuracy(truth, detected, o.overlap, !o.misses_only)).dump(2) << "\n";
    return ok;
}

int cmd_bench(const Options& o)
{
    using Clock = std::chrono::steady_clock;
    const PipelineConfig cfg = load_pipeline_config(o.config_path);
    cfg.validate();
    const RunMatrix r = load_rlc(o.inputs.at(0));
    const std::size_t repeat = std::max<std::size_t>(1, o.repeat);

    auto measure = [&](auto&& body) {
        std::size_t peak = 0;
        double best = 0.0;
        SegmentTree tree;
        for (std::size_t k = 0; k < repeat; ++k) {
            alloc::PeakScope scope;
            const auto t0 = Clock::now();
            tree = body();
            const double s = std::chrono::duration<double>(Clock::now() - t0).count();
            best = k == 0 ? s : std::min(best, s);
            peak = std::max(peak, scope.peak_above_base());
        }
        return std::tuple{best, peak, std::move(tree)};
    };
    auto [compressed_s, compressed_peak, compressed_tree] = measure([&] { return run_pipeline(r, cfg); });
    auto [pixel_s, pixel_peak, pixel_tree] =
        measure([&] { return reference_oracle(decode_bitmap(r), cfg); });

    const json out = {
        {"rows", r.rows()},
        {"cols", r.width()},
        {"run_matrix_bytes", r.byte_size()},
        {"bitmap_bytes", r.rows() * r.width()},
        {"packed_bitmap_bytes", r.rows() * ((r.width() + 7) / 8)},
        {"compressed", {{"seconds", compressed_s}, {"peak_aux_bytes", compressed_peak}}},
        {"decompress_then_segment", {{"seconds", pixel_s}, {"peak_aux_bytes", pixel_peak}}},
        {"trees_equal", compressed_tree == pixel_tree},
    };
    std::cout << out.dump(2) << "\n";
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Page segmentation on run-length compressed binary documents"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--jobs,-j", o.jobs, "Files processed in parallel in batch mode")
        ->check(CLI::PositiveNumber);

    auto* encode = app.add_subcommand("encode", "PBM to RLC");
    encode->add_option("inputs", o.inputs, "PBM files")->required();
    encode->add_option("-o,--output", o.output, "RLC file, or directory for several inputs")->required();

    auto* decode = app.add_subcommand("decode", "RLC to PBM");
    decode->add_option("inputs", o.inputs, "RLC files")->required();
    decode->add_option("-o,--output", o.output, "PBM file, or directory for several inputs")->required();
    decode->add_flag("--ascii", o.ascii, "Write P1 instead of P4");

    auto* toggle = app.add_subcommand("toggle", "Detect and toggle inverted rows; print the regions");
    toggle->add_option("input", o.inputs, "RLC file")->required()->expected(1);
    toggle->add_option("-o,--output", o.output, "Write the toggled matrix here");
    toggle->add_option("--rows", o.rows, "Toggle exactly TOP BOTTOM instead of detecting")->expected(2);
    toggle->add_option("--window", o.window, "Smoothing window (odd)");

    auto* segment = app.add_subcommand("segment", "Segment RLC documents into a tree");
    segment->add_option("inputs", o.inputs, "RLC files")->required();
    segment->add_option("-o,--output", o.output, "Tree JSON, or directory for several inputs")->required();
    segment->add_option("--overlay", o.overlay, "Also write the page with node outlines as PBM");
    segment->add_option("--details", o.details, "Also write separators and toggled regions as JSON");
    segment->add_option("--config", o.config_path, "Threshold configuration JSON");

    auto* gen = app.add_subcommand("gen", "Generate a synthetic document with ground truth");
    gen->add_option("spec", o.inputs, "Layout spec JSON")->required()->expected(1);
    gen->add_option("-o,--output", o.output, "Output prefix")->required();

    auto* eval = app.add_subcommand("eval", "Score detected lines against ground truth");
    eval->add_option("files", o.inputs, "detected.json gt.json")->required()->expected(2);
    eval->add_option("--overlap", o.overlap, "Minimum overlap fraction for a match");
    eval->add_flag("--misses-only", o.misses_only, "Do not count spurious detections as errors");

    auto* bench = app.add_subcommand("bench", "Time and memory of compressed vs decompress-then-segment");
    bench->add_option("input", o.inputs, "RLC file")->required()->expected(1);
    bench->add_option("--config", o.config_path, "Threshold configuration JSON");
    bench->add_option("--repeat", o.repeat, "Runs per path; the fastest is reported");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*encode)
            return cmd_encode(o);
        if (*decode)
            return cmd_decode(o);
        if (*toggle)
            return cmd_toggle(o);
        if (*segment)
            return cmd_segment(o);
        if (*gen)
            return cmd_gen(o);
        if (*eval)
            return cmd_eval(o);
        if (*bench)
            return cmd_bench(o);
    } catch (const ConfigError& e) {
        std::cerr << "rlseg: config error: " << e.what() << "\n";
        return config_error;
    } catch (const InfeasibleSpec& e) {
        std::cerr << "rlseg: infeasible spec: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "rlseg: " << e.what() << "\n";
        return invalid_input;
    }
    return ok;
}

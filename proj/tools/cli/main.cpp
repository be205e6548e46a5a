// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <hueforge/errors.hpp>
#include <hueforge/hue_plane.hpp>
#include <hueforge/image_io.hpp>
#include <hueforge/parallel.hpp>
#include <hueforge/pipeline.hpp>
#include <hueforge/report.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace hueforge::cli {

namespace {

enum ExitCode : int
{
    kOk = 0,
    kIo = 1,
    kUsage = 2,
    kValidation = 3,
};

class UsageError : public Error
{
public:
    using Error::Error;
};

struct Options
{
    std::vector<std::string> inputs;
    std::string hdr;
    std::string ldr;
    std::string corpus;
    std::vector<std::string> tmos;
    double alpha = 0.18;
    double bias = 0.85;
    double gamma = 2.2;
    bool no_gamma = false;
    bool compensate = false;
    std::string baseline;
    bool heatmap = false;
    std::string format = "json";
    std::string out;
};

std::vector<tmo::Operator> resolve_operators(const std::vector<std::string>& names, bool default_all)
{
    std::vector<tmo::Operator> ops;
    for (const auto& name : names) {
        auto op = tmo::parse_operator(name);
        if (!op) {
            throw UsageError("unknown tone-mapping operator '" + name +
                             "' (expected reinhard_global, reinhard_local, drago or durand)");
        }
        if (std::find(ops.begin(), ops.end(), *op) == ops.end()) {
            ops.push_back(*op);
        }
    }
    if (ops.empty()) {
        if (default_all) {
            ops = {tmo::Operator::reinhard_global, tmo::Operator::reinhard_local, tmo::Operator::drago,
                   tmo::Operator::durand};
        } else {
            ops = {tmo::Operator::reinhard_global};
        }
    }
    return ops;
}

bool with_baseline(const Options& o)
{
    if (o.baseline.empty()) {
        return false;
    }
    if (o.baseline != "mantiuk") {
        throw UsageError("unknown baseline '" + o.baseline + "' (expected mantiuk)");
    }
    return true;
}

void check_format(const Options& o)
{
    if (o.format != "json" && o.format != "csv") {
        throw UsageError("unknown report format '" + o.format + "' (expected json or csv)");
    }
}

pipeline::PipelineConfig make_config(const Options& o, tmo::Operator op)
{
    pipeline::PipelineConfig c;
    c.tmo.op = op;
    c.tmo.key_value = o.alpha;
    c.tmo.drago_bias = o.bias;
    c.tmo.validate();
    if (o.no_gamma) {
        c.reconstruction.gamma = std::nullopt;
    } else {
        if (!(o.gamma > 0.0)) {
            throw ValidationError("gamma must be positive");
        }
        c.reconstruction.gamma = o.gamma;
    }
    return c;
}

json config_json(const Options& o)
{
    json j;
    j["alpha"] = o.alpha;
    j["bias"] = o.bias;
    j["gamma"] = o.no_gamma ? json(nullptr) : json(o.gamma);
    j["compensate"] = o.compensate;
    j["baseline"] = o.baseline.empty() ? json(nullptr) : json(o.baseline);
    if (!o.baseline.empty()) {
        j["baseline_variant"] = "nonlinear";
    }
    return j;
}

void write_text(const fs::path& path, const std::string& text)
{
    io::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

fs::path ensure_out_dir(const Options& o)
{
    if (o.out.empty()) {
        throw UsageError("--out DIR is required");
    }
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + o.out + "': " + ec.message());
    }
    return o.out;
}

// ---------------------------------------------------------------------------

int cmd_tonemap(const Options& o)
{
    if (o.inputs.empty()) {
        throw UsageError("tonemap needs at least one --input");
    }
    const auto ops = resolve_operators(o.tmos, false);
    const bool mantiuk = with_baseline(o);
    const fs::path out = ensure_out_dir(o);

    json outputs = json::array();
    for (const auto& input : o.inputs) {
        const HdrImage hdr = io::load_hdr(input);
        const std::string stem = fs::path(input).stem().string();
        for (auto op : ops) {
            const auto config = make_config(o, op);
            auto conventional = pipeline::tone_map_conventional(hdr, config);
            const std::string base = stem + "_" + std::string(tmo::operator_name(op));
            auto emit = [&](const std::string& method, const LdrImage& img, std::optional<double> saturation) {
                const fs::path file = out / (base + (method == "conventional" ? "" : "_" + method) + ".png");
                io::save_ldr(file, img);
                json entry;
                entry["input"] = input;
                entry["tmo"] = tmo::operator_name(op);
                entry["method"] = method;
                entry["file"] = file.filename().string();
                entry["width"] = img.width();
                entry["height"] = img.height();
                if (saturation) {
                    entry["saturation"] = *saturation;
                }
                outputs.push_back(std::move(entry));
            };
            emit("conventional", conventional.ldr, std::nullopt);
            if (o.compensate) {
                emit("proposed", hue::compensate_image(conventional.ldr, hdr), std::nullopt);
            }
            if (mantiuk) {
                double s = 0.0;
                auto img = pipeline::tone_map_mantiuk(hdr, conventional.luminance, config, &s);
                emit("mantiuk", img, s);
            }
        }
    }
    json log;
    log["command"] = "tonemap";
    json tmo_names = json::array();
    for (auto op : ops) {
        tmo_names.push_back(tmo::operator_name(op));
    }
    log["tmo"] = tmo_names;
    log["config"] = config_json(o);
    log["outputs"] = outputs;
    write_text(out / "tonemap_log.json", log.dump(2) + "\n");
    return kOk;
}

int cmd_compensate(const Options& o)
{
    if (o.hdr.empty() || o.ldr.empty()) {
        throw UsageError("compensate needs --hdr and --ldr");
    }
    const HdrImage hdr = io::load_hdr(o.hdr);
    const LdrImage ldr = io::load_ldr(o.ldr);
    const fs::path out = ensure_out_dir(o);
    hue::CompensationStats stats;
    const LdrImage result = hue::compensate_image(ldr, hdr, &stats);
    const fs::path file = out / (fs::path(o.ldr).stem().string() + "_proposed.png");
    io::save_ldr(file, result);
    std::cout << file.string() << '\n';
    return kOk;
}

int cmd_metrics(const Options& o)
{
    if (o.hdr.empty() || o.ldr.empty()) {
        throw UsageError("metrics needs --hdr and --ldr");
    }
    check_format(o);
    if (o.heatmap && o.out.empty()) {
        throw UsageError("--heatmap needs --out DIR");
    }
    const HdrImage hdr = io::load_hdr(o.hdr);
    const LdrImage ldr = io::load_ldr(o.ldr);
    metrics::MetricConfig config;
    config.hue.ldr_transfer = o.no_gamma ? metrics::LdrTransfer::linear : metrics::LdrTransfer::srgb;
    config.keep_maps = o.heatmap;
    const auto report = metrics::evaluate(hdr, ldr, config);

    const std::string image = fs::path(o.hdr).stem().string();
    std::string text;
    if (o.format == "csv") {
        text = report::csv_header() + "\n" + report::csv_row(image, "", fs::path(o.ldr).stem().string(), report) + "\n";
    } else {
        json j;
        j["hdr"] = o.hdr;
        j["ldr"] = o.ldr;
        j["report"] = report::to_json(report);
        text = j.dump(2) + "\n";
    }
    std::cout << text;
    if (!o.out.empty()) {
        const fs::path out = ensure_out_dir(o);
        const std::string stem = fs::path(o.ldr).stem().string();
        write_text(out / (stem + "_metrics." + o.format), text);
        if (o.heatmap) {
            // Full scale: the largest possible per-pixel Delta c.
            io::save_ldr(out / (stem + "_delta_c.png"), report::heatmap(*report.delta_c_map, std::sqrt(3.0)));
            io::save_ldr(out / (stem + "_delta_h.png"), report::heatmap(*report.delta_h_map));
        }
    }
    return kOk;
}

std::vector<std::string> corpus_entries(const std::string& corpus)
{
    std::vector<std::string> entries;
    const fs::path root(corpus);
    std::error_code ec;
    if (fs::is_directory(root, ec)) {
        for (const auto& e : fs::directory_iterator(root)) {
            const auto ext = e.path().extension().string();
            if (ext == ".hdr" || ext == ".pfm" || ext == ".pic" || ext == ".rgbe") {
                entries.push_back(e.path().string());
            }
        }
        std::sort(entries.begin(), entries.end());
        return entries;
    }
    // A JSON manifest: {"images": ["a.hdr", ...]} with paths relative to it.
    const auto bytes = io::read_file(root);
    json manifest;
    try {
        manifest = json::parse(bytes.begin(), bytes.end());
    } catch (const json::exception& e) {
        throw FormatError("corpus manifest '" + corpus + "': " + e.what());
    }
    if (!manifest.contains("images") || !manifest["images"].is_array()) {
        throw FormatError("corpus manifest '" + corpus + "' has no \"images\" array");
    }
    for (const auto& item : manifest["images"]) {
        if (!item.is_string()) {
            throw FormatError("corpus manifest '" + corpus + "': image entries must be strings");
        }
        const fs::path p(item.get<std::string>());
        entries.push_back((p.is_absolute() ? p : root.parent_path() / p).string());
    }
    return entries;
}

struct CompareCell
{
    std::string image;
    tmo::Operator op;
    std::vector<pipeline::MethodResult> results;
};

int cmd_compare(const Options& o)
{
    if (o.corpus.empty()) {
        throw UsageError("compare needs --corpus DIR|MANIFEST");
    }
    check_format(o);
    const auto ops = resolve_operators(o.tmos, true);
    const bool mantiuk = with_baseline(o);
    for (auto op : ops) {
        make_config(o, op);
    }
    const auto entries = corpus_entries(o.corpus);
    if (entries.empty()) {
        throw IoError("corpus '" + o.corpus + "' contains no HDR images");
    }

    // One slot per (image, operator); filled in parallel, reported in order.
    std::vector<std::optional<CompareCell>> cells(entries.size() * ops.size());
    std::vector<std::string> failures(entries.size());
    parallel::for_each_index(entries.size(), [&](std::size_t i) {
        HdrImage hdr;
        try {
            hdr = io::load_hdr(entries[i]);
        } catch (const Error& e) {
            failures[i] = e.what();
            return;
        }
        for (std::size_t k = 0; k < ops.size(); ++k) {
            auto config = make_config(o, ops[k]);
            config.metrics = pipeline::metric_config_for(config);
            cells[i * ops.size() + k] =
                CompareCell{fs::path(entries[i]).stem().string(), ops[k], pipeline::run_methods(hdr, config, mantiuk)};
        }
    });

    json rows = json::array();
    std::string csv = report::csv_header() + "\n";
    for (const auto& cell : cells) {
        if (!cell) {
            continue;
        }
        double best_dc = 1e300;
        double best_dh = 1e300;
        double best_q = -1e300;
        for (const auto& r : cell->results) {
            best_dc = std::min(best_dc, r.report.delta_c);
            best_dh = std::min(best_dh, r.report.delta_h);
            best_q = std::max(best_q, r.report.tmqi_q);
        }
        for (const auto& r : cell->results) {
            const auto method = pipeline::method_name(r.method);
            const auto tmo_name = tmo::operator_name(cell->op);
            csv += report::csv_row(cell->image, tmo_name, method, r.report) + "\n";
            json row;
            row["image"] = cell->image;
            row["tmo"] = tmo_name;
            row["method"] = method;
            const json scalars = report::to_json(r.report);
            for (const auto& [k, v] : scalars.items()) {
                row[k] = v;
            }
            row["best"] = {{"delta_c", r.report.delta_c == best_dc},
                           {"delta_h", r.report.delta_h == best_dh},
                           {"tmqi_q", r.report.tmqi_q == best_q}};
            rows.push_back(std::move(row));
        }
    }
    json errors = json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!failures[i].empty()) {
            errors.push_back({{"image", entries[i]}, {"error", failures[i]}});
            std::cerr << "hueforge: " << entries[i] << ": " << failures[i] << '\n';
        }
    }

    std::string text;
    if (o.format == "csv") {
        text = csv;
    } else {
        json j;
        j["command"] = "compare";
        j["corpus"] = o.corpus;
        json tmo_names = json::array();
        for (auto op : ops) {
            tmo_names.push_back(tmo::operator_name(op));
        }
        j["tmo"] = tmo_names;
        j["config"] = config_json(o);
        j["rows"] = rows;
        j["errors"] = errors;
        text = j.dump(2) + "\n";
    }
    std::cout << text;
    if (!o.out.empty()) {
        write_text(ensure_out_dir(o) / ("compare." + o.format), text);
    }
    return errors.empty() ? kOk : kIo;
}

void add_tmo_options(CLI::App* cmd, Options& o)
{
    cmd->add_option("--tmo", o.tmos, "Tone-mapping operator(s): reinhard_global, reinhard_local, drago, durand")
        ->delimiter(',');
    cmd->add_option("--alpha", o.alpha, "Key value for the Reinhard operators")->capture_default_str();
    cmd->add_option("--bias", o.bias, "Drago bias")->capture_default_str();
}

void add_gamma_options(CLI::App* cmd, Options& o)
{
    auto* g = cmd->add_option("--gamma", o.gamma, "Display gamma")->capture_default_str();
    auto* n = cmd->add_flag("--no-gamma", o.no_gamma, "Skip gamma encoding");
    g->excludes(n);
}

} // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Tone mapping with hue compensation on the RGB constant-hue plane"};
    app.require_subcommand(1);
    Options o;

    auto* tonemap = app.add_subcommand("tonemap", "Tone-map HDR images to 8-bit PNG");
    tonemap->add_option("--input", o.inputs, "HDR input (.hdr or .pfm); repeatable")->required();
    add_tmo_options(tonemap, o);
    add_gamma_options(tonemap, o);
    tonemap->add_flag("--compensate", o.compensate, "Also write the hue-compensated image");
    tonemap->add_option("--baseline", o.baseline, "Also write a baseline correction (mantiuk)");
    tonemap->add_option("--out", o.out, "Output directory")->required();

    auto* compensate = app.add_subcommand("compensate", "Compensate the hue of a tone-mapped image");
    compensate->add_option("--hdr", o.hdr, "HDR reference")->required();
    compensate->add_option("--ldr", o.ldr, "Tone-mapped 8-bit image")->required();
    compensate->add_option("--out", o.out, "Output directory")->required();

    auto* metrics = app.add_subcommand("metrics", "Measure an LDR image against its HDR reference");
    metrics->add_option("--hdr", o.hdr, "HDR reference")->required();
    metrics->add_option("--ldr", o.ldr, "Tone-mapped 8-bit image")->required();
    metrics->add_flag("--no-gamma", o.no_gamma, "LDR code values are linear (default: sRGB)");
    metrics->add_flag("--heatmap", o.heatmap, "Write per-pixel difference maps as PNG");
    metrics->add_option("--format", o.format, "Report format: json or csv")->capture_default_str();
    metrics->add_option("--out", o.out, "Output directory");

    auto* compare = app.add_subcommand("compare", "Compare conventional, compensated and baseline results");
    compare->add_option("--corpus", o.corpus, "Directory of HDR images or a JSON manifest")->required();
    add_tmo_options(compare, o);
    add_gamma_options(compare, o);
    compare->add_option("--baseline", o.baseline, "Include a baseline method (mantiuk)");
    compare->add_option("--format", o.format, "Report format: json or csv")->capture_default_str();
    compare->add_option("--out", o.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*tonemap) {
            return cmd_tonemap(o);
        }
        if (*compensate) {
            return cmd_compensate(o);
        }
        if (*metrics) {
            return cmd_metrics(o);
        }
        return cmd_compare(o);
    } catch (const UsageError& e) {
        std::cerr << "hueforge: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "hueforge: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        std::cerr << "hueforge: " << e.what() << '\n';
        return kValidation;
    }
}

} // namespace hueforge::cli

int main(int argc, char** argv) { return hueforge::cli::run(argc, argv); }

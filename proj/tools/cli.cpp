#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "radrobust/error.hpp"
#include "radrobust/experiment.hpp"
#include "radrobust/phantom.hpp"
#include "radrobust/scatter.hpp"

namespace radrobust::cli {

namespace fs = std::filesystem;

namespace {

struct PhantomOptions {
    PhantomConfig cfg;
    std::string texture = "bright_rim";
    double correlation_length = 4.0;
    int32_t rim_width = 2;
    double rim_gain = 2.0;
    std::string base_spacing = "0.07,0.07";
    std::string format = "raw";
    std::string out_dir = "phantom";
};

struct ExtractOptions {
    std::string manifest;
    std::vector<std::string> binnings;
    double target_area_change = 0.2;
    std::string spacing = "auto";
    int32_t alpha = 0;
    int32_t distance = 1;
    std::string comparisons = "orig_vs_eroded,orig_vs_dilated,eroded_vs_dilated";
    std::string interpolation = "bspline";
    int32_t structuring_element = 3;
    double threshold = kDefaultAgreementThreshold;
    int32_t threads = 1;
    std::string out_dir = ".";
    std::vector<std::string> scatter_features;
    bool svg = false;
};

struct CompareOptions {
    std::string features;
    std::vector<std::string> binnings;
    std::string comparisons = "orig_vs_eroded,orig_vs_dilated,eroded_vs_dilated";
    double threshold = kDefaultAgreementThreshold;
    std::string out_dir = ".";
};

struct ScatterOptions {
    std::string features;
    std::string feature;
    std::string binning;
    std::string comparison = "orig_vs_eroded";
    bool svg = false;
    std::string out_dir = ".";
};

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

Spacing parse_spacing_pair(const std::string &text) {
    const auto parts = split_list(text);
    Spacing s;
    auto number = [&](const std::string &t) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size()) {
            throw Error(ErrorKind::InvalidConfig, "bad spacing '" + text + "' (expected X,Y)");
        }
        return v;
    };
    if (parts.size() != 2) {
        throw Error(ErrorKind::InvalidConfig, "bad spacing '" + text + "' (expected X,Y)");
    }
    s.x = number(parts[0]);
    s.y = number(parts[1]);
    if (!(s.x > 0.0) || !(s.y > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "spacing must be positive");
    }
    return s;
}

std::vector<Comparison> parse_comparisons(const std::string &text) {
    std::vector<Comparison> out;
    for (const auto &item : split_list(text)) {
        out.push_back(parse_comparison(item));
    }
    if (out.empty()) {
        throw Error(ErrorKind::InvalidConfig, "--comparisons is empty");
    }
    return out;
}

ExperimentConfig to_config(const ExtractOptions &o) {
    ExperimentConfig cfg;
    for (const auto &b : o.binnings) {
        cfg.binning_specs.push_back(parse_binning(b));
    }
    cfg.target_area_change = o.target_area_change;
    if (o.spacing != "auto") {
        cfg.target_spacing = parse_spacing_pair(o.spacing);
    }
    cfg.ngldm.alpha = o.alpha;
    cfg.ngldm.distance = o.distance;
    cfg.comparisons = parse_comparisons(o.comparisons);
    if (o.interpolation == "bspline") {
        cfg.interpolation = Interpolation::CubicBSpline;
    } else if (o.interpolation == "linear") {
        cfg.interpolation = Interpolation::Linear;
    } else {
        throw Error(ErrorKind::InvalidConfig, "unknown interpolation '" + o.interpolation + "'");
    }
    cfg.structuring_element = o.structuring_element;
    cfg.threshold = o.threshold;
    cfg.threads = o.threads;
    validate(cfg);
    return cfg;
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    }
    out << text;
}

void make_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorKind::IoError, "cannot create '" + dir.string() + "': " + ec.message());
    }
}

int do_phantom(PhantomOptions o, std::ostream &out) {
    if (o.texture == "bright_rim") {
        o.cfg.texture = BrightRim{o.correlation_length, o.rim_width, o.rim_gain};
    } else if (o.texture == "smooth_noise") {
        o.cfg.texture = SmoothNoise{o.correlation_length};
    } else {
        throw Error(ErrorKind::InvalidConfig, "unknown texture '" + o.texture + "'");
    }
    o.cfg.base_spacing = parse_spacing_pair(o.base_spacing);
    PhantomFormat format = PhantomFormat::Raw;
    if (o.format == "png") {
        format = PhantomFormat::Png16;
    } else if (o.format != "raw") {
        throw Error(ErrorKind::InvalidConfig, "unknown format '" + o.format + "'");
    }
    const auto manifest = write_corpus(o.cfg, o.out_dir, format);
    out << "wrote " << o.cfg.n_images << " images and " << manifest.string() << "\n";
    return kExitOk;
}

ExperimentResult extract_from(const ExtractOptions &o, const ExperimentConfig &cfg, bool with_report) {
    const fs::path manifest(o.manifest);
    const auto corpus = load_corpus(read_manifest(manifest), manifest);
    return with_report ? run_experiment(corpus, cfg) : extract_corpus(corpus, cfg);
}

void log_exclusions(const ExperimentResult &r, std::ostream &err) {
    for (const auto &e : r.excluded) {
        err << "excluded " << e.image_id << ": " << e.reason << "\n";
    }
}

int do_extract(const ExtractOptions &o, std::ostream &out, std::ostream &err) {
    const auto cfg = to_config(o);
    const auto result = extract_from(o, cfg, false);
    log_exclusions(result, err);
    make_dir(o.out_dir);
    const auto path = fs::path(o.out_dir) / "features.csv";
    result.features.write(path);
    out << "wrote " << path.string() << " (" << result.n_included << " images, " << result.excluded.size()
        << " excluded)\n";
    return kExitOk;
}

int do_run(const ExtractOptions &o, std::ostream &out, std::ostream &err) {
    const auto cfg = to_config(o);
    const auto result = extract_from(o, cfg, true);
    log_exclusions(result, err);
    make_dir(o.out_dir);
    const fs::path dir(o.out_dir);
    result.features.write(dir / "features.csv");
    write_text(dir / "report.json", dump_report(result.report));
    for (const auto &feature : o.scatter_features) {
        for (const auto &spec : cfg.binning_specs) {
            for (const auto c : cfg.comparisons) {
                write_scatter(emit_scatter(feature, to_string(spec), c, result.features), dir, o.svg);
            }
        }
    }
    out << "wrote " << (dir / "features.csv").string() << " and " << (dir / "report.json").string() << " ("
        << result.n_included << " images, " << result.excluded.size() << " excluded)\n";
    return kExitOk;
}

int do_compare(const CompareOptions &o, std::ostream &out) {
    const auto comparisons = parse_comparisons(o.comparisons);
    const auto table = FeatureTable::read(o.features);
    std::vector<std::string> binnings;
    for (const auto &b : o.binnings) {
        binnings.push_back(to_string(parse_binning(b)));
    }
    auto report = compare_features(table, comparisons, o.threshold, binnings);
    auto comps = nlohmann::ordered_json::array();
    for (const auto c : comparisons) {
        comps.push_back(std::string(to_string(c)));
    }
    report.provenance["source"] = fs::path(o.features).filename().string();
    report.provenance["comparisons"] = comps;
    report.provenance["threshold"] = o.threshold;
    report.provenance["moments"] = {{"lins_ccc", "population"}, {"summary_std_dev", "sample"}};
    make_dir(o.out_dir);
    const auto path = fs::path(o.out_dir) / "report.json";
    write_text(path, dump_report(report));
    out << "wrote " << path.string() << "\n";
    return kExitOk;
}

int do_scatter(const ScatterOptions &o, std::ostream &out) {
    const auto table = FeatureTable::read(o.features);
    const auto scatter = emit_scatter(o.feature, to_string(parse_binning(o.binning)), parse_comparison(o.comparison), table);
    const auto path = write_scatter(scatter, o.out_dir, o.svg);
    out << "wrote " << path.string() << " (" << scatter.points.size() << " points)\n";
    return kExitOk;
}

void add_extract_options(CLI::App *cmd, ExtractOptions &o) {
    cmd->add_option("--manifest", o.manifest, "Manifest CSV")->required();
    cmd->add_option("--binning", o.binnings, "dynamic:N | static:LO,HI,N | static-width:W[,ORIGIN] (repeatable)")
        ->required()
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    cmd->add_option("--target-area-change", o.target_area_change, "Relative area change of the perturbed masks");
    cmd->add_option("--spacing", o.spacing, "Target spacing: auto (corpus median) or X,Y in mm");
    cmd->add_option("--bins-alpha", o.alpha, "NGLDM gray-level tolerance");
    cmd->add_option("--distance", o.distance, "NGLDM neighbourhood radius");
    cmd->add_option("--comparisons", o.comparisons, "Comma-separated comparisons");
    cmd->add_option("--interpolation", o.interpolation, "bspline | linear");
    cmd->add_option("--structuring-element", o.structuring_element, "Square footprint side (odd)");
    cmd->add_option("--threshold", o.threshold, "Agreement threshold for the n > t count");
    cmd->add_option("--threads", o.threads, "Extraction worker threads");
    cmd->add_option("--out-dir", o.out_dir, "Output directory");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Radiomic NGLDM feature robustness under dynamic and static gray-level binning", "radrobust"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    PhantomOptions ph;
    auto *phantom = app.add_subcommand("phantom", "Generate a synthetic phantom corpus and manifest");
    phantom->add_option("--seed", ph.cfg.seed, "Generator seed");
    phantom->add_option("--n-images", ph.cfg.n_images, "Number of images");
    phantom->add_option("--image-size", ph.cfg.image_size, "Image side in pixels");
    phantom->add_option("--bbox-size", ph.cfg.bbox_size, "Bounding box side in pixels");
    phantom->add_option("--texture", ph.texture, "bright_rim | smooth_noise");
    phantom->add_option("--correlation-length", ph.correlation_length, "Gaussian correlation length (pixels)");
    phantom->add_option("--rim-width", ph.rim_width, "Bright band width (pixels)");
    phantom->add_option("--rim-gain", ph.rim_gain, "Bright band gain (> 1)");
    phantom->add_option("--plateaus", ph.cfg.plateaus, "Intensity plateaus (0 = continuous)");
    phantom->add_option("--correlation-jitter", ph.cfg.correlation_jitter, "Per-image correlation length jitter");
    phantom->add_option("--min-contrast", ph.cfg.min_contrast, "Lower bound of per-image contrast");
    phantom->add_option("--base-spacing", ph.base_spacing, "Pixel spacing X,Y in mm");
    phantom->add_option("--format", ph.format, "raw | png");
    phantom->add_option("--out-dir", ph.out_dir, "Output directory");

    ExtractOptions ex;
    auto *extract = app.add_subcommand("extract", "Extract features for every image and mask variant");
    add_extract_options(extract, ex);

    ExtractOptions rn;
    auto *runcmd = app.add_subcommand("run", "Extract features and compute the agreement report");
    add_extract_options(runcmd, rn);
    runcmd->add_option("--scatter", rn.scatter_features, "Also emit scatter tables for this feature (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    runcmd->add_flag("--svg", rn.svg, "Write SVG plots next to scatter tables");

    CompareOptions cmp;
    auto *compare = app.add_subcommand("compare", "Compute agreement metrics from a feature table");
    compare->add_option("--features", cmp.features, "features.csv")->required();
    compare->add_option("--binning", cmp.binnings, "Restrict to these binnings (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    compare->add_option("--comparisons", cmp.comparisons, "Comma-separated comparisons");
    compare->add_option("--threshold", cmp.threshold, "Agreement threshold");
    compare->add_option("--out-dir", cmp.out_dir, "Output directory");

    ScatterOptions sc;
    auto *scatter = app.add_subcommand("scatter", "Emit a per-image scatter table for one feature");
    scatter->add_option("--features", sc.features, "features.csv")->required();
    scatter->add_option("--feature", sc.feature, "Feature name")->required();
    scatter->add_option("--binning", sc.binning, "Binning spec")->required();
    scatter->add_option("--comparison", sc.comparison, "Comparison");
    scatter->add_flag("--svg", sc.svg, "Also write an SVG plot");
    scatter->add_option("--out-dir", sc.out_dir, "Output directory");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (phantom->parsed()) {
            return do_phantom(ph, out);
        }
        if (extract->parsed()) {
            return do_extract(ex, out, err);
        }
        if (runcmd->parsed()) {
            return do_run(rn, out, err);
        }
        if (compare->parsed()) {
            return do_compare(cmp, out);
        }
        if (scatter->parsed()) {
            return do_scatter(sc, out);
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return is_config_error(e.kind()) ? kExitConfig : kExitData;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitConfig;
}

} // namespace radrobust::cli

#include "brokeneyes/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "brokeneyes/config.hpp"
#include "brokeneyes/corpus.hpp"
#include "brokeneyes/error.hpp"
#include "brokeneyes/image_io.hpp"
#include "brokeneyes/metrics.hpp"
#include "brokeneyes/parallel.hpp"
#include "brokeneyes/rng.hpp"

namespace brokeneyes::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::optional<unsigned> threads;
    std::optional<fs::path> config;
};

ToolConfig effective_config(const CommonFlags& flags)
{
    return flags.config ? load_config(*flags.config) : ToolConfig{};
}

// --threads, then BROKENEYES_THREADS, then the config file, then auto.
unsigned effective_threads(const CommonFlags& flags, const ToolConfig& cfg)
{
    if (flags.threads) return *flags.threads;
    if (const char* env = std::getenv("BROKENEYES_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end == nullptr || *end != '\0') {
            throw UsageError(std::string("BROKENEYES_THREADS must be a non-negative integer, got \"") + env + "\"");
        }
        return static_cast<unsigned>(v);
    }
    return cfg.threads;
}

std::string valid_condition_list()
{
    std::string s;
    for (Condition c : kAllConditions) {
        if (!s.empty()) s += "|";
        s += condition_name(c);
    }
    return s;
}

std::vector<fs::path> list_files(const fs::path& dir)
{
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
    return files;
}

int cmd_filter(const fs::path& input, const std::string& condition_text, const fs::path& out_dir,
               std::optional<std::uint64_t> seed_flag, const CommonFlags& flags, std::ostream& out,
               std::ostream& err)
{
    const auto condition = parse_condition(condition_text);
    if (!condition) {
        throw UsageError("unknown condition \"" + condition_text + "\"; valid conditions: " + valid_condition_list());
    }
    const ToolConfig cfg = effective_config(flags);
    const std::uint64_t seed = seed_flag.value_or(cfg.effective_seed());
    const unsigned threads = effective_threads(flags, cfg);

    std::vector<fs::path> inputs;
    if (fs::is_directory(input)) {
        inputs = list_files(input);
    } else if (fs::exists(input)) {
        inputs.push_back(input);
    } else {
        throw Error(ErrorKind::NotFound, "input not found: " + input.string());
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<std::string> sources;
    for (const fs::path& p : inputs) sources.push_back(p.generic_string());
    const std::vector<std::string> names = unique_png_names(sources);

    std::vector<std::string> failures(inputs.size());
    parallel_for(inputs.size(), threads, [&](std::size_t i) {
        try {
            const RgbImage img = read_image(inputs[i]);
            const RgbImage filtered = apply_condition(img, *condition, cfg.filters, derive_seed(seed, inputs[i].filename().generic_string()));
            write_png(filtered, out_dir / names[i]);
        } catch (const Error& e) {
            failures[i] = e.what();
        }
    });

    int failed = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (failures[i].empty()) {
            out << sources[i] << " -> " << (out_dir / names[i]).generic_string() << '\n';
        } else {
            ++failed;
            err << "error: " << failures[i] << '\n';
        }
    }
    if (failed > 0) {
        err << failed << " of " << inputs.size() << " file(s) failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_curate(const fs::path& human_dir, const fs::path& nonhuman_dir, const fs::path& out_dir,
               std::optional<std::uint64_t> seed_flag, const CommonFlags& flags, std::ostream& out,
               std::ostream& err)
{
    const ToolConfig cfg = effective_config(flags);
    CurationConfig curation = cfg.curation;
    curation.global_seed = seed_flag.value_or(cfg.effective_seed());
    const unsigned threads = effective_threads(flags, cfg);

    std::vector<ImageRecord> classes[2];
    const ClassLabel labels[2] = {ClassLabel::Human, ClassLabel::NonHuman};
    const fs::path dirs[2] = {human_dir, nonhuman_dir};
    for (int k = 0; k < 2; ++k) {
        ScanResult scan = scan_directory(dirs[k], labels[k]);
        for (const std::string& w : scan.warnings) err << "warning: skipping undecodable " << w << '\n';
        const std::size_t scanned = scan.records.size();
        auto kept = filter_min_resolution(std::move(scan.records), curation.min_resolution);
        const std::size_t after_res = kept.size();
        kept = dedup_by_hash(kept);
        err << class_name(labels[k]) << ": " << scanned << " decoded, " << after_res << " >= "
            << curation.min_resolution << "px, " << kept.size() << " unique\n";
        classes[k] = std::move(kept);
    }

    auto [human, non_human] =
        balance_classes(std::move(classes[0]), std::move(classes[1]), curation.balance_tolerance, curation.global_seed);
    err << "balanced: " << human.size() << " human, " << non_human.size() << " non_human\n";

    std::vector<ImageRecord> all = human;
    all.insert(all.end(), non_human.begin(), non_human.end());
    all = stratified_split(std::move(all), curation.split_ratios, curation.global_seed);
    human.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(human.size()));
    non_human.assign(all.begin() + static_cast<std::ptrdiff_t>(human.size()), all.end());

    Manifest manifest = generate_dataset(human, non_human, cfg.filters, curation.global_seed, out_dir,
                                         {curation.target_size, threads});
    manifest.config_digest = config_digest(curation, cfg.filters);
    write_manifest(manifest, out_dir / "manifest.jsonl");

    std::map<std::pair<Condition, ClassLabel>, std::size_t> counts;
    for (const ImageRecord& r : manifest.records) ++counts[{r.condition, r.class_label}];
    std::size_t total_h = 0;
    std::size_t total_n = 0;
    out << std::left << std::setw(12) << "condition" << std::right << std::setw(10) << "human" << std::setw(12)
        << "non_human" << '\n';
    for (Condition c : kAllConditions) {
        const std::size_t h = counts[{c, ClassLabel::Human}];
        const std::size_t n = counts[{c, ClassLabel::NonHuman}];
        total_h += h;
        total_n += n;
        out << std::left << std::setw(12) << condition_name(c) << std::right << std::setw(10) << h << std::setw(12)
            << n << '\n';
    }
    out << std::left << std::setw(12) << "total" << std::right << std::setw(10) << total_h << std::setw(12)
        << total_n << '\n';
    return kExitOk;
}

int cmd_analyze(const fs::path& baseline, const fs::path& disorders_dir, const fs::path& out_dir,
                const std::string& format, const CommonFlags& flags, std::ostream& out, std::ostream& err)
{
    const ToolConfig cfg = effective_config(flags);
    const unsigned threads = effective_threads(flags, cfg);

    std::map<Condition, fs::path> disorders;
    for (Condition c : kDisorders) {
        disorders[c] = disorders_dir / (std::string(condition_name(c)) + ".tnsr");
    }
    const std::vector<MetricsRecord> records = compare_conditions(baseline, disorders, threads);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());

    const ReportFormat fmt = format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
    const fs::path report = out_dir / (format == "csv" ? "report.csv" : "report.json");
    write_report(records, report, fmt);

    const FeatureTensor base = read_tensor(baseline);
    parallel_for(kDisorders.size(), threads, [&](std::size_t i) {
        const Condition c = kDisorders[i];
        const FeatureTensor t = read_tensor(disorders.at(c));
        write_png(diff_heatmap(base, t), out_dir / ("heatmap_" + std::string(condition_name(c)) + ".png"));
    });

    out << std::left << std::setw(12) << "condition" << std::right << std::setw(20) << "activation_energy"
        << std::setw(20) << "cosine_similarity" << '\n';
    for (const MetricsRecord& r : records) {
        out << std::left << std::setw(12) << condition_name(r.condition) << std::right << std::fixed
            << std::setprecision(4) << std::setw(20) << r.activation_energy << std::setw(20) << r.cosine_similarity
            << '\n';
    }
    out.unsetf(std::ios::floatfield);
    err << "wrote " << report.generic_string() << " and " << kDisorders.size() << " heatmaps\n";
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Eye-disorder image filters, corpus curation and feature-map comparison", "brokeneyes"};
    app.require_subcommand(1);

    CommonFlags filter_flags;
    fs::path filter_input;
    fs::path filter_out;
    std::string filter_condition;
    std::optional<std::uint64_t> filter_seed;
    auto* filter = app.add_subcommand("filter", "Apply one condition filter to an image or a directory of images");
    filter->add_option("--input", filter_input, "Image file or directory")->required();
    filter->add_option("--condition", filter_condition, valid_condition_list())->required();
    filter->add_option("--out", filter_out, "Output directory")->required();
    filter->add_option("--seed", filter_seed, "Global seed");
    filter->add_option("--config", filter_flags.config, "JSON config file");
    filter->add_option("--threads", filter_flags.threads, "Worker threads (0 = auto)");

    CommonFlags curate_flags;
    fs::path curate_human;
    fs::path curate_nonhuman;
    fs::path curate_out;
    std::optional<std::uint64_t> curate_seed;
    auto* curate = app.add_subcommand("curate", "Curate both classes and generate the six-condition dataset");
    curate->add_option("--human", curate_human, "Directory of human-class images")->required();
    curate->add_option("--nonhuman", curate_nonhuman, "Directory of non-human-class images")->required();
    curate->add_option("--out", curate_out, "Output directory")->required();
    curate->add_option("--seed", curate_seed, "Global seed (overrides config)");
    curate->add_option("--config", curate_flags.config, "JSON config file");
    curate->add_option("--threads", curate_flags.threads, "Worker threads (0 = auto)");

    CommonFlags analyze_flags;
    fs::path analyze_baseline;
    fs::path analyze_disorders;
    fs::path analyze_out;
    std::string analyze_format = "json";
    auto* analyze = app.add_subcommand("analyze", "Compare disorder feature maps against the normal baseline");
    analyze->add_option("--baseline", analyze_baseline, "Normal-condition TNSR tensor")->required();
    analyze->add_option("--disorders", analyze_disorders, "Directory holding <condition>.tnsr files")->required();
    analyze->add_option("--out", analyze_out, "Output directory")->required();
    analyze->add_option("--format", analyze_format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("--config", analyze_flags.config, "JSON config file");
    analyze->add_option("--threads", analyze_flags.threads, "Worker threads (0 = auto)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        if (filter->parsed()) {
            return cmd_filter(filter_input, filter_condition, filter_out, filter_seed, filter_flags, out, err);
        }
        if (curate->parsed()) {
            return cmd_curate(curate_human, curate_nonhuman, curate_out, curate_seed, curate_flags, out, err);
        }
        return cmd_analyze(analyze_baseline, analyze_disorders, analyze_out, analyze_format, analyze_flags, out,
                           err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

} // namespace brokeneyes::cli

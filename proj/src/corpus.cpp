#include "brokeneyes/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "brokeneyes/error.hpp"
#include "brokeneyes/image_io.hpp"
#include "brokeneyes/parallel.hpp"
#include "brokeneyes/rng.hpp"

namespace brokeneyes {

namespace fs = std::filesystem;

std::string_view class_name(ClassLabel c) noexcept
{
    return c == ClassLabel::Human ? "human" : "non_human";
}

std::string_view split_name(Split s) noexcept
{
    switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
    case Split::Unassigned: return "unassigned";
    }
    return "unassigned";
}

std::optional<ClassLabel> parse_class(std::string_view name)
{
    if (name == "human") return ClassLabel::Human;
    if (name == "non_human") return ClassLabel::NonHuman;
    return std::nullopt;
}

std::optional<Split> parse_split(std::string_view name)
{
    for (Split s : {Split::Train, Split::Val, Split::Test, Split::Unassigned}) {
        if (split_name(s) == name) return s;
    }
    return std::nullopt;
}

void SplitRatios::validate() const
{
    if (!(train > 0.0 && val > 0.0 && test > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "split ratios must be positive");
    }
    if (std::fabs(train + val + test - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidParameter, "split ratios must sum to 1");
    }
}

void CurationConfig::validate() const
{
    split_ratios.validate();
    if (!(balance_tolerance >= 0.0 && balance_tolerance <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "balance_tolerance must be in [0,1]");
    }
    if (target_size == 0) throw Error(ErrorKind::InvalidParameter, "target_size must be >= 1");
}

ScanResult scan_directory(const fs::path& dir, ClassLabel label)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw Error(ErrorKind::NotFound, "directory not found: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });

    ScanResult result;
    for (const fs::path& file : files) {
        const std::vector<std::uint8_t> bytes = read_file_bytes(file);
        try {
            const RgbImage img = decode_image(bytes);
            ImageRecord rec;
            rec.path = file.generic_string();
            rec.class_label = label;
            rec.sha256 = sha256(bytes);
            rec.width = img.width();
            rec.height = img.height();
            result.records.push_back(std::move(rec));
        } catch (const Error& e) {
            result.warnings.push_back(file.generic_string() + ": " + e.what());
        }
    }
    return result;
}

std::vector<ImageRecord> filter_min_resolution(std::vector<ImageRecord> records,
                                               std::uint32_t min_resolution)
{
    std::erase_if(records, [&](const ImageRecord& r) { return std::min(r.width, r.height) < min_resolution; });
    return records;
}

std::vector<ImageRecord> dedup_by_hash(const std::vector<ImageRecord>& records)
{
    std::map<Sha256Digest, std::size_t> keeper;
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto [it, inserted] = keeper.try_emplace(records[i].sha256, i);
        if (!inserted && records[i].path < records[it->second].path) it->second = i;
    }
    std::vector<bool> keep(records.size(), false);
    for (const auto& [hash, index] : keeper) keep[index] = true;

    std::vector<ImageRecord> out;
    out.reserve(keeper.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (keep[i]) out.push_back(records[i]);
    }
    return out;
}

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed)
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng64 rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

std::uint64_t stream_seed(std::uint64_t seed, ClassLabel label, std::string_view purpose)
{
    return derive_seed(seed, std::string(class_name(label)) + ":" + std::string(purpose));
}

// Slack absorbs representation error in ratio * count products.
constexpr double kRatioSlack = 1e-9;

std::vector<ImageRecord> truncate_shuffled(std::vector<ImageRecord> records, std::size_t keep_count,
                                           std::uint64_t seed)
{
    std::vector<std::size_t> idx = shuffled_indices(records.size(), seed);
    idx.resize(keep_count);
    std::sort(idx.begin(), idx.end());
    std::vector<ImageRecord> out;
    out.reserve(keep_count);
    for (std::size_t i : idx) out.push_back(std::move(records[i]));
    return out;
}

} // namespace

std::pair<std::vector<ImageRecord>, std::vector<ImageRecord>>
balance_classes(std::vector<ImageRecord> human, std::vector<ImageRecord> non_human,
                double tolerance, std::uint64_t seed)
{
    if (human.empty() || non_human.empty()) {
        throw Error(ErrorKind::EmptyClass,
                    std::string("cannot balance: ") + (human.empty() ? "human" : "non_human") + " class is empty");
    }
    if (!(tolerance >= 0.0 && tolerance <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "balance tolerance must be in [0,1]");
    }
    const std::size_t smaller = std::min(human.size(), non_human.size());
    const auto cap = static_cast<std::size_t>(std::ceil(smaller * (1.0 + tolerance) - kRatioSlack));
    if (human.size() > cap) {
        human = truncate_shuffled(std::move(human), cap, stream_seed(seed, ClassLabel::Human, "balance"));
    } else if (non_human.size() > cap) {
        non_human = truncate_shuffled(std::move(non_human), cap, stream_seed(seed, ClassLabel::NonHuman, "balance"));
    }
    return {std::move(human), std::move(non_human)};
}

std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios& ratios)
{
    ratios.validate();
    const auto n_train = static_cast<std::size_t>(std::floor(ratios.train * n + kRatioSlack));
    const auto n_val = static_cast<std::size_t>(std::floor(ratios.val * n + kRatioSlack));
    return {n_train, n_val, n - n_train - n_val};
}

std::vector<ImageRecord> stratified_split(std::vector<ImageRecord> records, const SplitRatios& ratios,
                                          std::uint64_t seed)
{
    ratios.validate();
    constexpr ClassLabel kLabels[2] = {ClassLabel::Human, ClassLabel::NonHuman};

    std::vector<std::size_t> members[2];
    for (std::size_t i = 0; i < records.size(); ++i) {
        members[records[i].class_label == ClassLabel::Human ? 0 : 1].push_back(i);
    }
    std::array<std::size_t, 3> sizes[2];
    for (int k = 0; k < 2; ++k) {
        if (members[k].empty()) {
            throw Error(ErrorKind::EmptyClass,
                        std::string("cannot split: ") + std::string(class_name(kLabels[k])) + " class is empty");
        }
        sizes[k] = split_sizes(members[k].size(), ratios);
    }

    // Per-class flooring can undershoot the pooled train/val counts by one;
    // the class with the larger fractional remainder takes the slot from its
    // test share.
    const auto pooled = split_sizes(records.size(), ratios);
    const double ratio[2] = {ratios.train, ratios.val};
    for (int part = 0; part < 2; ++part) {
        const std::size_t have = sizes[0][part] + sizes[1][part];
        for (std::size_t missing = pooled[part] > have ? pooled[part] - have : 0; missing > 0; --missing) {
            int best = -1;
            double best_frac = -1.0;
            for (int k = 0; k < 2; ++k) {
                const double exact = ratio[part] * members[k].size();
                const double frac = exact - static_cast<double>(sizes[k][part]);
                if (sizes[k][2] > 0 && frac > best_frac) {
                    best = k;
                    best_frac = frac;
                }
            }
            if (best < 0) break;
            ++sizes[best][part];
            --sizes[best][2];
        }
    }

    for (int k = 0; k < 2; ++k) {
        const auto [n_train, n_val, n_test] = sizes[k];
        const std::vector<std::size_t> order =
            shuffled_indices(members[k].size(), stream_seed(seed, kLabels[k], "split"));
        for (std::size_t j = 0; j < order.size(); ++j) {
            const Split s = j < n_train ? Split::Train : j < n_train + n_val ? Split::Val : Split::Test;
            records[members[k][order[j]]].split = s;
        }
    }
    return records;
}

RgbImage resize_image(const RgbImage& img, std::uint32_t target)
{
    if (target == 0) throw Error(ErrorKind::InvalidParameter, "resize target must be >= 1");
    const std::uint32_t w = img.width();
    const std::uint32_t h = img.height();
    if (w == target && h == target) return img;

    const double sx = static_cast<double>(w) / target;
    const double sy = static_cast<double>(h) / target;
    RgbImage out(target, target);
    for (std::uint32_t y = 0; y < target; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(h - 1));
        const auto y0 = static_cast<std::uint32_t>(fy);
        const std::uint32_t y1 = std::min(y0 + 1, h - 1);
        const double ty = fy - y0;
        for (std::uint32_t x = 0; x < target; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(w - 1));
            const auto x0 = static_cast<std::uint32_t>(fx);
            const std::uint32_t x1 = std::min(x0 + 1, w - 1);
            const double tx = fx - x0;
            auto lerp2 = [&](std::uint8_t Rgb::*ch) {
                const double top = (1.0 - tx) * (img.at(x0, y0).*ch) + tx * (img.at(x1, y0).*ch);
                const double bottom = (1.0 - tx) * (img.at(x0, y1).*ch) + tx * (img.at(x1, y1).*ch);
                return to_channel((1.0 - ty) * top + ty * bottom);
            };
            out.at(x, y) = {lerp2(&Rgb::r), lerp2(&Rgb::g), lerp2(&Rgb::b)};
        }
    }
    return out;
}

std::vector<std::string> unique_png_names(const std::vector<std::string>& sources)
{
    std::set<std::string> taken;
    std::vector<std::string> names;
    names.reserve(sources.size());
    for (const std::string& source : sources) {
        const fs::path src(source);
        std::string name = src.stem().string() + ".png";
        if (!taken.insert(name).second) {
            std::string ext = src.extension().string();
            if (!ext.empty()) ext.erase(0, 1);
            std::string base = src.stem().string() + "_" + ext;
            name = base + ".png";
            for (int n = 2; !taken.insert(name).second; ++n) name = base + "_" + std::to_string(n) + ".png";
        }
        names.push_back(std::move(name));
    }
    return names;
}

Manifest generate_dataset(const std::vector<ImageRecord>& human,
                          const std::vector<ImageRecord>& non_human,
                          const FilterParams& params, std::uint64_t seed, const fs::path& out_dir,
                          const GenerateOptions& options)
{
    params.validate();
    if (options.target_size == 0) throw Error(ErrorKind::InvalidParameter, "target_size must be >= 1");

    for (Condition c : kAllConditions) {
        for (ClassLabel label : {ClassLabel::Human, ClassLabel::NonHuman}) {
            std::error_code ec;
            fs::create_directories(out_dir / condition_name(c) / class_name(label), ec);
            if (ec) {
                throw Error(ErrorKind::Io, "cannot create " + (out_dir / condition_name(c)).string() + ": " +
                                               ec.message());
            }
        }
    }

    struct Job {
        const ImageRecord* source;
        std::string name;
    };
    std::vector<Job> jobs;
    for (const auto* group : {&human, &non_human}) {
        std::vector<std::string> sources;
        for (const ImageRecord& r : *group) sources.push_back(r.path);
        const std::vector<std::string> names = unique_png_names(sources);
        for (std::size_t i = 0; i < group->size(); ++i) jobs.push_back({&(*group)[i], names[i]});
    }

    // results[job][condition]
    std::vector<std::array<ImageRecord, kAllConditions.size()>> results(jobs.size());
    parallel_for(jobs.size(), options.threads, [&](std::size_t j) {
        const ImageRecord& src = *jobs[j].source;
        const RgbImage base = resize_image(read_image(src.path), options.target_size);
        // Keyed on class and file name so the draw does not depend on where the corpus lives.
        const std::uint64_t image_seed = derive_seed(
            seed, std::string(class_name(src.class_label)) + "/" + fs::path(src.path).filename().generic_string());
        for (std::size_t k = 0; k < kAllConditions.size(); ++k) {
            const Condition c = kAllConditions[k];
            const RgbImage filtered = apply_condition(base, c, params, image_seed);
            const std::vector<std::uint8_t> png = encode_png(filtered);
            const fs::path rel = fs::path(condition_name(c)) / class_name(src.class_label) / jobs[j].name;
            write_file_bytes(out_dir / rel, png);

            ImageRecord& rec = results[j][k];
            rec.path = rel.generic_string();
            rec.class_label = src.class_label;
            rec.condition = c;
            rec.split = src.split;
            rec.sha256 = sha256(png);
            rec.width = filtered.width();
            rec.height = filtered.height();
        }
    });

    Manifest manifest;
    manifest.created_at = utc_timestamp();
    manifest.records.reserve(jobs.size() * kAllConditions.size());
    for (std::size_t k = 0; k < kAllConditions.size(); ++k) {
        for (auto& per_job : results) manifest.records.push_back(std::move(per_job[k]));
    }
    return manifest;
}

} // namespace brokeneyes

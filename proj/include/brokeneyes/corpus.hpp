#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "brokeneyes/condition.hpp"
#include "brokeneyes/filters.hpp"
#include "brokeneyes/image.hpp"
#include "brokeneyes/sha256.hpp"

namespace brokeneyes {

enum class ClassLabel { Human, NonHuman };
enum class Split { Train, Val, Test, Unassigned };

std::string_view class_name(ClassLabel c) noexcept;      // human | non_human
std::string_view split_name(Split s) noexcept;           // train | val | test | unassigned
std::optional<ClassLabel> parse_class(std::string_view name);
std::optional<Split> parse_split(std::string_view name);

struct ImageRecord {
    std::string path;
    ClassLabel class_label = ClassLabel::Human;
    Condition condition = Condition::Normal;
    Split split = Split::Unassigned;
    Sha256Digest sha256{};
    std::uint32_t width = 0;
    std::uint32_t height = 0;

    friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

struct Manifest {
    std::vector<ImageRecord> records;
    std::string created_at;     // ISO-8601 UTC
    std::string config_digest;  // hex SHA-256 of the producing config
};

struct SplitRatios {
    double train = 0.70;
    double val = 0.15;
    double test = 0.15;

    void validate() const;
};

struct CurationConfig {
    std::uint32_t min_resolution = 64;
    std::uint32_t target_size = 224;
    SplitRatios split_ratios;
    double balance_tolerance = 0.10;
    std::uint64_t global_seed = 0;

    void validate() const;
};

struct ScanResult {
    std::vector<ImageRecord> records;
    std::vector<std::string> warnings;  // one per undecodable file
};

/// One record per decodable regular file directly inside `dir`, ordered by
/// path. Throws NotFound if the directory does not exist.
ScanResult scan_directory(const std::filesystem::path& dir, ClassLabel label);

std::vector<ImageRecord> filter_min_resolution(std::vector<ImageRecord> records,
                                               std::uint32_t min_resolution);

/// Keeps, for each content hash, the record with the lexicographically
/// smallest path; survivors stay in input order.
std::vector<ImageRecord> dedup_by_hash(const std::vector<ImageRecord>& records);

/// Truncates the larger class to ceil(smaller * (1 + tolerance)) when it
/// exceeds that bound, after a seeded shuffle. Survivors keep input order.
std::pair<std::vector<ImageRecord>, std::vector<ImageRecord>>
balance_classes(std::vector<ImageRecord> human, std::vector<ImageRecord> non_human,
                double tolerance, std::uint64_t seed);

/// Per class sizes: floor(train*N), floor(val*N), remainder to test.
std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios& ratios);

/// Shuffles each class independently by seed and assigns splits. Pooled
/// split sizes follow split_sizes(total) exactly; each class starts from
/// split_sizes(class count) and absorbs at most one leftover train/val slot.
/// Output keeps input order.
std::vector<ImageRecord> stratified_split(std::vector<ImageRecord> records,
                                          const SplitRatios& ratios, std::uint64_t seed);

/// Bilinear resize to target x target with half-pixel-center sampling.
RgbImage resize_image(const RgbImage& img, std::uint32_t target);

/// "<stem>.png" per source path; a repeated stem becomes "<stem>_<ext>.png"
/// (then "_2", "_3", ...) in input order.
std::vector<std::string> unique_png_names(const std::vector<std::string>& sources);

struct GenerateOptions {
    std::uint32_t target_size = 224;
    unsigned threads = 0;
};

/// Writes out_dir/<condition>/<class>/<stem>.png for every source record and
/// every condition. Record paths in the result are relative to out_dir, in
/// condition order (kAllConditions), then source order with human first.
/// Per-image seeds are derive_seed(seed, "<class>/<file name>").
Manifest generate_dataset(const std::vector<ImageRecord>& human,
                          const std::vector<ImageRecord>& non_human,
                          const FilterParams& params, std::uint64_t seed,
                          const std::filesystem::path& out_dir,
                          const GenerateOptions& options = {});

/// JSON-Lines; fields in order path, class, condition, split, sha256, width,
/// height. created_at and config_digest go to the sidecar meta_path(path)
/// when either is non-empty.
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);
std::filesystem::path meta_path(const std::filesystem::path& manifest_path);

/// Current UTC time (or SOURCE_DATE_EPOCH when set) as ISO-8601.
std::string utc_timestamp();

} // namespace brokeneyes

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "brokeneyes/image.hpp"
#include "brokeneyes/rng.hpp"
#include "brokeneyes/tensor.hpp"

namespace fixtures {

/// Smooth colorful scene: gradients, a few discs and bars, mild noise.
/// Distinct seeds give distinct images.
brokeneyes::RgbImage natural_image(std::uint32_t width, std::uint32_t height, std::uint64_t seed);

/// Independent uniform noise per channel.
brokeneyes::RgbImage noise_image(std::uint32_t width, std::uint32_t height, std::uint64_t seed);

brokeneyes::FeatureTensor random_tensor(brokeneyes::Rng64& rng, std::uint32_t c, std::uint32_t h,
                                        std::uint32_t w, double lo = -4.0, double hi = 4.0);

/// Writes `count` distinct PNGs named <prefix>_0000.png ... into dir.
void write_corpus(const std::filesystem::path& dir, const std::string& prefix, std::size_t count,
                  std::uint32_t size, std::uint64_t seed);

std::vector<std::uint8_t> slurp(const std::filesystem::path& path);

/// Relative path -> file bytes, for every regular file under root.
std::vector<std::pair<std::string, std::vector<std::uint8_t>>> tree_contents(const std::filesystem::path& root);

class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

private:
    std::filesystem::path path_;
};

/// Sum of absolute horizontal and vertical neighbour differences over all channels.
double total_variation(const brokeneyes::RgbImage& img);

} // namespace fixtures

namespace fixtures {

/// Baseline JPEG at the given quality, via libjpeg.
void write_jpeg(const brokeneyes::RgbImage& img, const std::filesystem::path& path, int quality = 90);

} // namespace fixtures

#include "support/fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <unistd.h>

#include "brokeneyes/image_io.hpp"

namespace fixtures {

namespace fs = std::filesystem;
using brokeneyes::Rgb;
using brokeneyes::RgbImage;
using brokeneyes::Rng64;

RgbImage natural_image(std::uint32_t width, std::uint32_t height, std::uint64_t seed)
{
    Rng64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
    const double phase_r = rng.uniform(0, 6.28);
    const double phase_g = rng.uniform(0, 6.28);
    const double phase_b = rng.uniform(0, 6.28);
    const double freq = rng.uniform(1.0, 3.0);

    struct Disc {
        double cx, cy, r;
        Rgb color;
    };
    std::vector<Disc> discs;
    const int n = 3 + static_cast<int>(rng.below(4));
    for (int i = 0; i < n; ++i) {
        Disc d;
        d.cx = rng.uniform(0, width);
        d.cy = rng.uniform(0, height);
        d.r = rng.uniform(0.05, 0.25) * std::min(width, height);
        d.color = {static_cast<std::uint8_t>(rng.below(256)), static_cast<std::uint8_t>(rng.below(256)),
                   static_cast<std::uint8_t>(rng.below(256))};
        discs.push_back(d);
    }

    RgbImage img(width, height);
    for (std::uint32_t y = 0; y < height; ++y) {
        for (std::uint32_t x = 0; x < width; ++x) {
            const double u = static_cast<double>(x) / width;
            const double v = static_cast<double>(y) / height;
            double r = 128 + 100 * std::sin(freq * 3.0 * u + phase_r);
            double g = 128 + 100 * std::sin(freq * 2.0 * v + phase_g);
            double b = 128 + 100 * std::sin(freq * (u + v) * 2.5 + phase_b);
            for (const Disc& d : discs) {
                if (std::hypot(x + 0.5 - d.cx, y + 0.5 - d.cy) <= d.r) {
                    r = d.color.r;
                    g = d.color.g;
                    b = d.color.b;
                }
            }
            const double jitter = rng.uniform(-6.0, 6.0);
            img.at(x, y) = {brokeneyes::to_channel(r + jitter), brokeneyes::to_channel(g + jitter),
                            brokeneyes::to_channel(b + jitter)};
        }
    }
    return img;
}

RgbImage noise_image(std::uint32_t width, std::uint32_t height, std::uint64_t seed)
{
    Rng64 rng(seed);
    RgbImage img(width, height);
    for (Rgb& p : img.pixels()) {
        p = {static_cast<std::uint8_t>(rng.below(256)), static_cast<std::uint8_t>(rng.below(256)),
             static_cast<std::uint8_t>(rng.below(256))};
    }
    return img;
}

brokeneyes::FeatureTensor random_tensor(Rng64& rng, std::uint32_t c, std::uint32_t h, std::uint32_t w,
                                        double lo, double hi)
{
    brokeneyes::FeatureTensor t(c, h, w);
    for (float& v : t.values()) v = static_cast<float>(rng.uniform(lo, hi));
    return t;
}

void write_corpus(const fs::path& dir, const std::string& prefix, std::size_t count, std::uint32_t size,
                  std::uint64_t seed)
{
    fs::create_directories(dir);
    for (std::size_t i = 0; i < count; ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%04zu.png", prefix.c_str(), i);
        brokeneyes::write_png(natural_image(size, size, seed * 100003 + i), dir / name);
    }
}

std::vector<std::uint8_t> slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::pair<std::string, std::vector<std::uint8_t>>> tree_contents(const fs::path& root)
{
    std::vector<std::pair<std::string, std::vector<std::uint8_t>>> out;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) {
            out.emplace_back(fs::relative(entry.path(), root).generic_string(), slurp(entry.path()));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TempDir::TempDir(const std::string& tag)
{
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("brokeneyes_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

double total_variation(const RgbImage& img)
{
    double tv = 0.0;
    auto diff = [](const Rgb& a, const Rgb& b) {
        return std::abs(a.r - b.r) + std::abs(a.g - b.g) + std::abs(a.b - b.b);
    };
    for (std::uint32_t y = 0; y < img.height(); ++y) {
        for (std::uint32_t x = 0; x < img.width(); ++x) {
            if (x + 1 < img.width()) tv += diff(img.at(x, y), img.at(x + 1, y));
            if (y + 1 < img.height()) tv += diff(img.at(x, y), img.at(x, y + 1));
        }
    }
    return tv;
}

} // namespace fixtures

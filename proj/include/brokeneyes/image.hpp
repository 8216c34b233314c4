#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace brokeneyes {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit RGB raster, row-major. Width and height are always >= 1.
class RgbImage {
public:
    RgbImage(std::uint32_t width, std::uint32_t height, Rgb fill = {});
    RgbImage(std::uint32_t width, std::uint32_t height, std::vector<Rgb> pixels);

    std::uint32_t width() const noexcept { return width_; }
    std::uint32_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    Rgb& at(std::uint32_t x, std::uint32_t y) { return pixels_[index(x, y)]; }
    const Rgb& at(std::uint32_t x, std::uint32_t y) const { return pixels_[index(x, y)]; }

    std::span<Rgb> pixels() noexcept { return pixels_; }
    std::span<const Rgb> pixels() const noexcept { return pixels_; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    std::size_t index(std::uint32_t x, std::uint32_t y) const noexcept
    {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    std::uint32_t width_;
    std::uint32_t height_;
    std::vector<Rgb> pixels_;
};

/// Single-channel f64 field with the same layout as RgbImage; used for masks
/// and intermediate blur passes.
struct Plane {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<double> values;

    Plane(std::uint32_t w, std::uint32_t h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

    double& at(std::uint32_t x, std::uint32_t y) { return values[static_cast<std::size_t>(y) * width + x]; }
    double at(std::uint32_t x, std::uint32_t y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Round half away from zero and clamp into [0, 255].
std::uint8_t to_channel(double v) noexcept;

/// Rec. 601 luma averaged over all pixels.
double mean_luminance(const RgbImage& img);

} // namespace brokeneyes

#include "brokeneyes/image.hpp"

#include <cmath>
#include <string>

#include "brokeneyes/error.hpp"

namespace brokeneyes {

namespace {

void check_dims(std::uint32_t width, std::uint32_t height)
{
    if (width == 0 || height == 0) {
        throw Error(ErrorKind::InvalidParameter,
                    "image dimensions must be >= 1, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
}

} // namespace

RgbImage::RgbImage(std::uint32_t width, std::uint32_t height, Rgb fill)
    : width_(width), height_(height)
{
    check_dims(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

RgbImage::RgbImage(std::uint32_t width, std::uint32_t height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels))
{
    check_dims(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * height) {
        throw Error(ErrorKind::InvalidParameter, "pixel count does not match width*height");
    }
}

std::uint8_t to_channel(double v) noexcept
{
    const double r = std::round(v);
    if (!(r > 0.0)) return 0;
    if (r >= 255.0) return 255;
    return static_cast<std::uint8_t>(r);
}

double mean_luminance(const RgbImage& img)
{
    double sum = 0.0;
    for (const Rgb& p : img.pixels()) {
        sum += 0.299 * p.r + 0.587 * p.g + 0.114 * p.b;
    }
    return sum / static_cast<double>(img.size());
}

} // namespace brokeneyes

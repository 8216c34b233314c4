#include "brokeneyes/blur.hpp"

#include <algorithm>
#include <cmath>

#include "brokeneyes/error.hpp"

namespace brokeneyes {

std::vector<double> gaussian_kernel(double sigma)
{
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::InvalidParameter, "gaussian sigma must be finite and >= 0");
    }
    if (sigma == 0.0) return {1.0};

    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> w(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        w[i + radius] = std::exp(-static_cast<double>(i) * i / (2.0 * sigma * sigma));
        sum += w[i + radius];
    }
    for (double& v : w) v /= sum;
    return w;
}

namespace {

// Clamp-to-edge passes. Every output sums its taps in kernel order, so the
// result does not depend on how the loops are arranged.
void convolve_rows(const std::vector<double>& src, std::vector<double>& dst, std::uint32_t width,
                   std::uint32_t height, const std::vector<double>& kernel)
{
    const int radius = static_cast<int>(kernel.size() / 2);
    const int w = static_cast<int>(width);
    std::vector<double> padded(width + 2 * radius);
    for (std::uint32_t y = 0; y < height; ++y) {
        const double* row = src.data() + static_cast<std::size_t>(y) * width;
        for (int i = 0; i < w + 2 * radius; ++i) padded[i] = row[std::clamp(i - radius, 0, w - 1)];
        double* out = dst.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (std::size_t k = 0; k < kernel.size(); ++k) acc += kernel[k] * padded[x + k];
            out[x] = acc;
        }
    }
}

void convolve_columns(const std::vector<double>& src, std::vector<double>& dst, std::uint32_t width,
                      std::uint32_t height, const std::vector<double>& kernel)
{
    const int radius = static_cast<int>(kernel.size() / 2);
    const int hmax = static_cast<int>(height) - 1;
    for (int y = 0; y <= hmax; ++y) {
        double* out = dst.data() + static_cast<std::size_t>(y) * width;
        std::fill(out, out + width, 0.0);
        for (int k = -radius; k <= radius; ++k) {
            const double weight = kernel[k + radius];
            const double* row = src.data() + static_cast<std::size_t>(std::clamp(y + k, 0, hmax)) * width;
            for (std::uint32_t x = 0; x < width; ++x) out[x] += weight * row[x];
        }
    }
}

} // namespace

Plane gaussian_blur(const Plane& field, double sigma)
{
    const std::vector<double> kernel = gaussian_kernel(sigma);
    if (kernel.size() == 1) return field;

    Plane tmp(field.width, field.height);
    Plane out(field.width, field.height);
    convolve_rows(field.values, tmp.values, field.width, field.height, kernel);
    convolve_columns(tmp.values, out.values, field.width, field.height, kernel);
    return out;
}

RgbImage gaussian_blur(const RgbImage& img, double sigma)
{
    const std::vector<double> kernel = gaussian_kernel(sigma);
    if (kernel.size() == 1) return img;

    const std::uint32_t w = img.width();
    const std::uint32_t h = img.height();
    std::vector<double> src(img.size());
    std::vector<double> tmp(img.size());
    std::vector<double> dst(img.size());
    RgbImage out(w, h);

    for (int channel = 0; channel < 3; ++channel) {
        auto member = channel == 0 ? &Rgb::r : channel == 1 ? &Rgb::g : &Rgb::b;
        for (std::size_t i = 0; i < img.size(); ++i) src[i] = img.pixels()[i].*member;
        convolve_rows(src, tmp, w, h, kernel);
        convolve_columns(tmp, dst, w, h, kernel);
        for (std::size_t i = 0; i < img.size(); ++i) out.pixels()[i].*member = to_channel(dst[i]);
    }
    return out;
}

} // namespace brokeneyes

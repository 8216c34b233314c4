#pragma once

#include <vector>

#include "brokeneyes/image.hpp"

namespace brokeneyes {

/// Normalized Gaussian weights for offsets -r..r with r = ceil(3 sigma).
/// sigma == 0 yields the single tap {1}.
std::vector<double> gaussian_kernel(double sigma);

/// Separable clamp-to-edge blur of an f64 field; no rounding.
Plane gaussian_blur(const Plane& field, double sigma);

/// Per-channel separable Gaussian blur, rounded once after both passes.
/// sigma == 0 returns the input unchanged; sigma < 0 throws InvalidParameter.
RgbImage gaussian_blur(const RgbImage& img, double sigma);

} // namespace brokeneyes

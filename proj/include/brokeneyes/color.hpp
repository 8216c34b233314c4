#pragma once

#include "brokeneyes/image.hpp"

namespace brokeneyes {

struct Hsv {
    double h = 0.0; // degrees, [0, 360)
    double s = 0.0; // [0, 1]
    double v = 0.0; // [0, 1]
};

Hsv rgb_to_hsv(Rgb c) noexcept;
Rgb hsv_to_rgb(Hsv c) noexcept;

} // namespace brokeneyes

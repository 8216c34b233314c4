#include "brokeneyes/color.hpp"

#include <algorithm>
#include <cmath>

namespace brokeneyes {

Hsv rgb_to_hsv(Rgb c) noexcept
{
    const double r = c.r / 255.0;
    const double g = c.g / 255.0;
    const double b = c.b / 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double delta = mx - mn;

    Hsv out;
    out.v = mx;
    out.s = mx > 0.0 ? delta / mx : 0.0;
    if (delta > 0.0) {
        double h;
        if (mx == r) {
            h = std::fmod((g - b) / delta, 6.0);
        } else if (mx == g) {
            h = (b - r) / delta + 2.0;
        } else {
            h = (r - g) / delta + 4.0;
        }
        h *= 60.0;
        if (h < 0.0) h += 360.0;
        if (h >= 360.0) h -= 360.0;
        out.h = h;
    }
    return out;
}

Rgb hsv_to_rgb(Hsv c) noexcept
{
    const double chroma = c.v * c.s;
    double hp = std::fmod(c.h, 360.0);
    if (hp < 0.0) hp += 360.0;
    hp /= 60.0;
    const double x = chroma * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp)) {
    case 0: r = chroma; g = x; break;
    case 1: r = x; g = chroma; break;
    case 2: g = chroma; b = x; break;
    case 3: g = x; b = chroma; break;
    case 4: r = x; b = chroma; break;
    default: r = chroma; b = x; break;
    }
    const double m = c.v - chroma;
    return {to_channel((r + m) * 255.0), to_channel((g + m) * 255.0), to_channel((b + m) * 255.0)};
}

} // namespace brokeneyes

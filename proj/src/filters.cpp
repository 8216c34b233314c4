#include "brokeneyes/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "brokeneyes/blur.hpp"
#include "brokeneyes/color.hpp"
#include "brokeneyes/error.hpp"
#include "brokeneyes/rng.hpp"

namespace brokeneyes {

namespace {

void require(bool ok, const char* what)
{
    if (!ok) throw Error(ErrorKind::InvalidParameter, std::string("invalid filter parameter: ") + what);
}

bool finite_all(std::initializer_list<double> xs)
{
    return std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

double min_side(std::uint32_t w, std::uint32_t h) { return static_cast<double>(std::min(w, h)); }

// Scales every pixel by a per-pixel factor in [0, 1].
RgbImage scale_pixels(const RgbImage& img, const Plane& factor)
{
    RgbImage out(img.width(), img.height());
    auto src = img.pixels();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double f = factor.values[i];
        dst[i] = {to_channel(src[i].r * f), to_channel(src[i].g * f), to_channel(src[i].b * f)};
    }
    return out;
}

} // namespace

void GlaucomaParams::validate() const
{
    require(finite_all({clear_radius_frac, fade_radius_frac, mask_blur_sigma_frac}), "glaucoma values must be finite");
    require(clear_radius_frac > 0.0, "glaucoma clear_radius_frac must be > 0");
    require(clear_radius_frac < fade_radius_frac, "glaucoma clear_radius_frac must be < fade_radius_frac");
    require(fade_radius_frac <= 1.0, "glaucoma fade_radius_frac must be <= 1");
    require(mask_blur_sigma_frac >= 0.0, "glaucoma mask_blur_sigma_frac must be >= 0");
}

void RefractiveParams::validate() const
{
    require(finite_all({sigma_min, sigma_max}), "refractive sigmas must be finite");
    require(sigma_min > 0.0, "refractive sigma_min must be > 0");
    require(sigma_min <= sigma_max, "refractive sigma_min must be <= sigma_max");
}

void AmdParams::validate() const
{
    require(finite_all({opaque_radius_frac, fade_radius_frac, mask_blur_sigma_frac}), "amd values must be finite");
    require(opaque_radius_frac > 0.0, "amd opaque_radius_frac must be > 0");
    require(opaque_radius_frac < fade_radius_frac, "amd opaque_radius_frac must be < fade_radius_frac");
    require(fade_radius_frac <= 1.0, "amd fade_radius_frac must be <= 1");
    require(mask_blur_sigma_frac >= 0.0, "amd mask_blur_sigma_frac must be >= 0");
}

void RetinopathyParams::validate() const
{
    require(finite_all({axis_min_frac, axis_max_frac}), "retinopathy axes must be finite");
    require(count_min >= 1, "retinopathy count_min must be >= 1");
    require(count_min <= count_max, "retinopathy count_min must be <= count_max");
    require(axis_min_frac > 0.0, "retinopathy axis_min_frac must be > 0");
    require(axis_min_frac <= axis_max_frac, "retinopathy axis_min_frac must be <= axis_max_frac");
    require(axis_max_frac < 0.5, "retinopathy axis_max_frac must be < 0.5");
}

void CataractParams::validate() const
{
    require(saturation_scale >= 0.0 && saturation_scale <= 1.0, "cataract saturation_scale must be in [0,1]");
    require(haze_strength >= 0.0 && haze_strength <= 1.0, "cataract haze_strength must be in [0,1]");
    require(std::isfinite(blur_sigma) && blur_sigma >= 0.0, "cataract blur_sigma must be >= 0");
}

void FilterParams::validate() const
{
    glaucoma.validate();
    refractive.validate();
    amd.validate();
    retinopathy.validate();
    cataract.validate();
}

Plane radial_ramp(std::uint32_t width, std::uint32_t height, double inner, double outer)
{
    Plane mask(width, height);
    const double cx = width / 2.0;
    const double cy = height / 2.0;
    for (std::uint32_t y = 0; y < height; ++y) {
        for (std::uint32_t x = 0; x < width; ++x) {
            const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
            double v;
            if (d <= inner) {
                v = 1.0;
            } else if (d >= outer) {
                v = 0.0;
            } else {
                v = (outer - d) / (outer - inner);
            }
            mask.at(x, y) = v;
        }
    }
    return mask;
}

Plane glaucoma_mask(std::uint32_t width, std::uint32_t height, const GlaucomaParams& p)
{
    p.validate();
    const double side = min_side(width, height);
    Plane mask = radial_ramp(width, height, p.clear_radius_frac * side, p.fade_radius_frac * side);
    return gaussian_blur(mask, p.mask_blur_sigma_frac * side);
}

Plane amd_mask(std::uint32_t width, std::uint32_t height, const AmdParams& p)
{
    p.validate();
    const double side = min_side(width, height);
    Plane mask = radial_ramp(width, height, p.opaque_radius_frac * side, p.fade_radius_frac * side);
    return gaussian_blur(mask, p.mask_blur_sigma_frac * side);
}

bool Ellipse::contains(double x, double y) const noexcept
{
    const double dx = x - cx;
    const double dy = y - cy;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double u = (dx * c + dy * s) / a;
    const double v = (-dx * s + dy * c) / b;
    return u * u + v * v <= 1.0;
}

std::vector<Ellipse> retinopathy_ellipses(std::uint32_t width, std::uint32_t height,
                                          const RetinopathyParams& p, std::uint64_t seed)
{
    p.validate();
    Rng64 rng(seed);
    const double drawn = rng.uniform(p.count_min, static_cast<double>(p.count_max) + 1.0);
    const int count = std::min(static_cast<int>(std::floor(drawn)), p.count_max);

    const double side = min_side(width, height);
    std::vector<Ellipse> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        Ellipse e;
        e.cx = rng.uniform(0.0, width);
        e.cy = rng.uniform(0.0, height);
        e.a = rng.uniform(p.axis_min_frac * side, p.axis_max_frac * side);
        e.b = rng.uniform(p.axis_min_frac * side, p.axis_max_frac * side);
        e.theta = rng.uniform(0.0, std::numbers::pi);
        out.push_back(e);
    }
    return out;
}

double refractive_sigma(const RefractiveParams& p, std::uint64_t seed)
{
    p.validate();
    Rng64 rng(seed);
    return rng.uniform(p.sigma_min, p.sigma_max);
}

RgbImage desaturate(const RgbImage& img, double saturation_scale)
{
    RgbImage out(img.width(), img.height());
    auto src = img.pixels();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        Hsv hsv = rgb_to_hsv(src[i]);
        hsv.s *= saturation_scale;
        dst[i] = hsv_to_rgb(hsv);
    }
    return out;
}

RgbImage add_haze(const RgbImage& img, double strength)
{
    RgbImage out(img.width(), img.height());
    auto src = img.pixels();
    auto dst = out.pixels();
    const double keep = 1.0 - strength;
    const double lift = strength * 255.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = {to_channel(keep * src[i].r + lift), to_channel(keep * src[i].g + lift),
                  to_channel(keep * src[i].b + lift)};
    }
    return out;
}

RgbImage apply_glaucoma(const RgbImage& img, const GlaucomaParams& p)
{
    return scale_pixels(img, glaucoma_mask(img.width(), img.height(), p));
}

RgbImage apply_refractive(const RgbImage& img, const RefractiveParams& p, std::uint64_t seed)
{
    return gaussian_blur(img, refractive_sigma(p, seed));
}

RgbImage apply_amd(const RgbImage& img, const AmdParams& p)
{
    Plane keep = amd_mask(img.width(), img.height(), p);
    for (double& v : keep.values) v = 1.0 - v;
    return scale_pixels(img, keep);
}

RgbImage apply_retinopathy(const RgbImage& img, const RetinopathyParams& p, std::uint64_t seed)
{
    const std::vector<Ellipse> ellipses = retinopathy_ellipses(img.width(), img.height(), p, seed);
    RgbImage out = img;
    const int wmax = static_cast<int>(img.width()) - 1;
    const int hmax = static_cast<int>(img.height()) - 1;
    for (const Ellipse& e : ellipses) {
        // The ellipse fits inside the circle of its major semi-axis.
        const double reach = std::max(e.a, e.b);
        const int x0 = std::clamp(static_cast<int>(std::floor(e.cx - reach)), 0, wmax);
        const int x1 = std::clamp(static_cast<int>(std::ceil(e.cx + reach)), 0, wmax);
        const int y0 = std::clamp(static_cast<int>(std::floor(e.cy - reach)), 0, hmax);
        const int y1 = std::clamp(static_cast<int>(std::ceil(e.cy + reach)), 0, hmax);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                if (e.contains(x + 0.5, y + 0.5)) out.at(x, y) = {0, 0, 0};
            }
        }
    }
    return out;
}

RgbImage apply_cataract(const RgbImage& img, const CataractParams& p)
{
    p.validate();
    RgbImage stage = desaturate(img, p.saturation_scale);
    stage = add_haze(stage, p.haze_strength);
    return gaussian_blur(stage, p.blur_sigma);
}

RgbImage apply_condition(const RgbImage& img, Condition c, const FilterParams& params,
                         std::uint64_t seed)
{
    switch (c) {
    case Condition::Normal: return img;
    case Condition::Amd: return apply_amd(img, params.amd);
    case Condition::Cataract: return apply_cataract(img, params.cataract);
    case Condition::Glaucoma: return apply_glaucoma(img, params.glaucoma);
    case Condition::RefractiveError: return apply_refractive(img, params.refractive, seed);
    case Condition::Retinopathy: return apply_retinopathy(img, params.retinopathy, seed);
    }
    throw Error(ErrorKind::InvalidParameter, "unknown condition");
}

} // namespace brokeneyes

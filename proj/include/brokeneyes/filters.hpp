#pragma once

#include <cstdint>
#include <vector>

#include "brokeneyes/condition.hpp"
#include "brokeneyes/image.hpp"

namespace brokeneyes {

// Radii and sigmas given as fractions are relative to min(width, height).

struct GlaucomaParams {
    double clear_radius_frac = 0.30;
    double fade_radius_frac = 0.55;
    double mask_blur_sigma_frac = 0.05;

    void validate() const;
};

struct RefractiveParams {
    double sigma_min = 2.0;
    double sigma_max = 6.0;

    void validate() const;
};

struct AmdParams {
    double opaque_radius_frac = 0.18;
    double fade_radius_frac = 0.35;
    double mask_blur_sigma_frac = 0.04;

    void validate() const;
};

struct RetinopathyParams {
    int count_min = 5;
    int count_max = 15;
    double axis_min_frac = 0.02;
    double axis_max_frac = 0.08;

    void validate() const;
};

struct CataractParams {
    double saturation_scale = 0.35;
    double haze_strength = 0.15;
    double blur_sigma = 4.0;

    void validate() const;
};

struct FilterParams {
    GlaucomaParams glaucoma;
    RefractiveParams refractive;
    AmdParams amd;
    RetinopathyParams retinopathy;
    CataractParams cataract;

    void validate() const;
};

/// Radial ramp: 1 for d <= inner, linear to 0 at outer, 0 beyond. d is the
/// distance of each pixel center from the image center.
Plane radial_ramp(std::uint32_t width, std::uint32_t height, double inner, double outer);

/// Glaucoma vignette mask after smoothing (1 = visible).
Plane glaucoma_mask(std::uint32_t width, std::uint32_t height, const GlaucomaParams& p);

/// AMD scotoma mask after smoothing (1 = fully dark).
Plane amd_mask(std::uint32_t width, std::uint32_t height, const AmdParams& p);

struct Ellipse {
    double cx = 0.0;
    double cy = 0.0;
    double a = 0.0; // semi-axis along the rotated x direction
    double b = 0.0;
    double theta = 0.0;

    /// True when the point lies inside or on the boundary.
    bool contains(double x, double y) const noexcept;
};

/// The ellipses apply_retinopathy paints for this seed, in draw order.
std::vector<Ellipse> retinopathy_ellipses(std::uint32_t width, std::uint32_t height,
                                          const RetinopathyParams& p, std::uint64_t seed);

/// Blur sigma apply_refractive draws for this seed.
double refractive_sigma(const RefractiveParams& p, std::uint64_t seed);

/// Saturation-only stage of the cataract filter.
RgbImage desaturate(const RgbImage& img, double saturation_scale);

/// Blend every channel toward white: round((1-k)*v + k*255).
RgbImage add_haze(const RgbImage& img, double strength);

RgbImage apply_glaucoma(const RgbImage& img, const GlaucomaParams& p);
RgbImage apply_refractive(const RgbImage& img, const RefractiveParams& p, std::uint64_t seed);
RgbImage apply_amd(const RgbImage& img, const AmdParams& p);
RgbImage apply_retinopathy(const RgbImage& img, const RetinopathyParams& p, std::uint64_t seed);
RgbImage apply_cataract(const RgbImage& img, const CataractParams& p);

/// Dispatch by condition. Normal returns a copy of the input; the seed is
/// only consumed by the refractive and retinopathy filters.
RgbImage apply_condition(const RgbImage& img, Condition c, const FilterParams& params,
                         std::uint64_t seed);

} // namespace brokeneyes

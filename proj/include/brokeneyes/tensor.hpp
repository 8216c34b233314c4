#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace brokeneyes {

/// C x H x W float32 activation map, channel-outermost row-major.
class FeatureTensor {
public:
    FeatureTensor(std::uint32_t channels, std::uint32_t height, std::uint32_t width);
    FeatureTensor(std::uint32_t channels, std::uint32_t height, std::uint32_t width,
                  std::vector<float> values);

    std::uint32_t channels() const noexcept { return channels_; }
    std::uint32_t height() const noexcept { return height_; }
    std::uint32_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return values_.size(); }

    float& at(std::uint32_t c, std::uint32_t y, std::uint32_t x) { return values_[offset(c, y, x)]; }
    float at(std::uint32_t c, std::uint32_t y, std::uint32_t x) const { return values_[offset(c, y, x)]; }

    std::span<float> values() noexcept { return values_; }
    std::span<const float> values() const noexcept { return values_; }

    bool same_shape(const FeatureTensor& other) const noexcept
    {
        return channels_ == other.channels_ && height_ == other.height_ && width_ == other.width_;
    }

private:
    std::size_t offset(std::uint32_t c, std::uint32_t y, std::uint32_t x) const noexcept
    {
        return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
    }

    std::uint32_t channels_;
    std::uint32_t height_;
    std::uint32_t width_;
    std::vector<float> values_;
};

// TNSR v1: "TNSR", u32 version=1, u32 ndim=3, u32 C, u32 H, u32 W,
// u32 dtype=1 (float32), then C*H*W float32. All little-endian.
inline constexpr std::size_t kTnsrHeaderSize = 28;

std::vector<std::uint8_t> encode_tensor(const FeatureTensor& t);

/// Throws Format (magic/version/ndim/dtype), Truncation (payload length does
/// not match the dims) or Data (non-finite value).
FeatureTensor decode_tensor(std::span<const std::uint8_t> bytes);

void write_tensor(const FeatureTensor& t, const std::filesystem::path& path);
FeatureTensor read_tensor(const std::filesystem::path& path);

} // namespace brokeneyes

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "brokeneyes/image.hpp"

namespace brokeneyes {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Decodes PNG or JPEG (sniffed from the leading bytes). Grayscale, palette,
/// 16-bit and alpha inputs are converted to 8-bit RGB. Throws Format on
/// anything else or on a corrupt stream.
RgbImage decode_image(std::span<const std::uint8_t> bytes);
RgbImage read_image(const std::filesystem::path& path);

/// 8-bit RGB PNG with fixed encoder settings, so equal images give equal bytes.
std::vector<std::uint8_t> encode_png(const RgbImage& img);
void write_png(const RgbImage& img, const std::filesystem::path& path);

} // namespace brokeneyes

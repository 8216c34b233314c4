#include "brokeneyes/tensor.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "brokeneyes/error.hpp"
#include "brokeneyes/image_io.hpp"

namespace brokeneyes {

namespace {

constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kNdim = 3;
constexpr std::uint32_t kDtypeFloat32 = 1;

std::size_t element_count(std::uint32_t c, std::uint32_t h, std::uint32_t w)
{
    return static_cast<std::size_t>(c) * h * w;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at)
{
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
    return v;
}

} // namespace

FeatureTensor::FeatureTensor(std::uint32_t channels, std::uint32_t height, std::uint32_t width)
    : FeatureTensor(channels, height, width, std::vector<float>(element_count(channels, height, width), 0.0f))
{
}

FeatureTensor::FeatureTensor(std::uint32_t channels, std::uint32_t height, std::uint32_t width,
                             std::vector<float> values)
    : channels_(channels), height_(height), width_(width), values_(std::move(values))
{
    if (values_.size() != element_count(channels, height, width)) {
        throw Error(ErrorKind::Shape, "tensor value count " + std::to_string(values_.size()) +
                                          " does not match " + std::to_string(channels) + "x" +
                                          std::to_string(height) + "x" + std::to_string(width));
    }
}

std::vector<std::uint8_t> encode_tensor(const FeatureTensor& t)
{
    std::vector<std::uint8_t> out;
    out.reserve(kTnsrHeaderSize + 4 * t.size());
    for (char c : {'T', 'N', 'S', 'R'}) out.push_back(static_cast<std::uint8_t>(c));
    put_u32(out, kVersion);
    put_u32(out, kNdim);
    put_u32(out, t.channels());
    put_u32(out, t.height());
    put_u32(out, t.width());
    put_u32(out, kDtypeFloat32);
    for (float v : t.values()) put_u32(out, std::bit_cast<std::uint32_t>(v));
    return out;
}

FeatureTensor decode_tensor(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 4 || std::memcmp(bytes.data(), "TNSR", 4) != 0) {
        throw Error(ErrorKind::Format, "not a TNSR file (bad magic)");
    }
    if (bytes.size() < kTnsrHeaderSize) {
        throw Error(ErrorKind::Truncation, "TNSR header truncated");
    }
    if (const auto v = get_u32(bytes, 4); v != kVersion) {
        throw Error(ErrorKind::Format, "unsupported TNSR version " + std::to_string(v));
    }
    if (const auto n = get_u32(bytes, 8); n != kNdim) {
        throw Error(ErrorKind::Format, "TNSR ndim must be 3, got " + std::to_string(n));
    }
    const std::uint32_t c = get_u32(bytes, 12);
    const std::uint32_t h = get_u32(bytes, 16);
    const std::uint32_t w = get_u32(bytes, 20);
    if (const auto d = get_u32(bytes, 24); d != kDtypeFloat32) {
        throw Error(ErrorKind::Format, "unsupported TNSR dtype code " + std::to_string(d));
    }
    const std::size_t payload = bytes.size() - kTnsrHeaderSize;
    const unsigned __int128 wanted = static_cast<unsigned __int128>(c) * h * w * 4;
    if (wanted != payload) {
        throw Error(ErrorKind::Truncation, "TNSR payload is " + std::to_string(payload) + " bytes, dims " +
                                               std::to_string(c) + "x" + std::to_string(h) + "x" +
                                               std::to_string(w) + " need " +
                                               std::to_string(static_cast<double>(wanted)));
    }
    const std::size_t count = payload / 4;
    std::vector<float> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = std::bit_cast<float>(get_u32(bytes, kTnsrHeaderSize + 4 * i));
        if (!std::isfinite(values[i])) {
            throw Error(ErrorKind::Data, "non-finite value at element " + std::to_string(i));
        }
    }
    return FeatureTensor(c, h, w, std::move(values));
}

void write_tensor(const FeatureTensor& t, const std::filesystem::path& path)
{
    write_file_bytes(path, encode_tensor(t));
}

FeatureTensor read_tensor(const std::filesystem::path& path)
{
    const std::vector<std::uint8_t> bytes = read_file_bytes(path);
    try {
        return decode_tensor(bytes);
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

} // namespace brokeneyes

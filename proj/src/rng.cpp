#include "brokeneyes/rng.hpp"

#include <cmath>

#include "brokeneyes/error.hpp"

namespace brokeneyes {

std::uint64_t Rng64::next() noexcept
{
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng64::uniform(double lo, double hi)
{
    if (lo > hi) {
        throw Error(ErrorKind::InvalidRange, "uniform: lo > hi");
    }
    const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
    const double v = lo + (hi - lo) * unit;
    // lo + span*unit can round up to hi for wide spans.
    if (v >= hi && hi > lo) return std::nextafter(hi, lo);
    return v;
}

std::uint64_t Rng64::below(std::uint64_t n)
{
    if (n == 0) {
        throw Error(ErrorKind::InvalidRange, "below: n must be >= 1");
    }
    const auto k = static_cast<std::uint64_t>(uniform(0.0, static_cast<double>(n)));
    return k < n ? k : n - 1;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view image_path) noexcept
{
    return global_seed ^ fnv1a64(image_path);
}

} // namespace brokeneyes

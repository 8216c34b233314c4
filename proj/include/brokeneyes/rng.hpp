#pragma once

#include <cstdint>
#include <string_view>

namespace brokeneyes {

/// SplitMix64 generator. Identical seeds yield identical streams everywhere.
class Rng64 {
public:
    explicit Rng64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;

    /// Uniform in [lo, hi) from the top 53 bits of one draw. Throws
    /// InvalidRange when lo > hi; lo == hi returns lo.
    double uniform(double lo, double hi);

    /// Uniform integer in [0, n). n must be >= 1.
    std::uint64_t below(std::uint64_t n);

    std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Per-image seed: global_seed XOR FNV-1a-64(path bytes).
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view image_path) noexcept;

} // namespace brokeneyes

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace brokeneyes {

enum class Condition { Normal, Amd, Cataract, Glaucoma, RefractiveError, Retinopathy };

inline constexpr std::array<Condition, 6> kAllConditions = {
    Condition::Normal,   Condition::Amd,             Condition::Cataract,
    Condition::Glaucoma, Condition::RefractiveError, Condition::Retinopathy,
};

/// Disorders in report order (everything except Normal).
inline constexpr std::array<Condition, 5> kDisorders = {
    Condition::Amd, Condition::Cataract, Condition::Glaucoma,
    Condition::RefractiveError, Condition::Retinopathy,
};

/// Lowercase name used on disk, in manifests and reports: normal, amd,
/// cataract, glaucoma, refractive, retinopathy.
std::string_view condition_name(Condition c) noexcept;

/// Case-insensitive inverse of condition_name.
std::optional<Condition> parse_condition(std::string_view name);

} // namespace brokeneyes

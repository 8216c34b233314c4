#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "brokeneyes/corpus.hpp"
#include "brokeneyes/filters.hpp"

namespace brokeneyes {

/// Effective tool configuration. Keys absent from the JSON document keep the
/// module defaults; unknown keys are rejected with Parse.
struct ToolConfig {
    FilterParams filters;
    CurationConfig curation;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;

    std::uint64_t effective_seed() const noexcept { return seed.value_or(curation.global_seed); }
};

ToolConfig parse_config(std::string_view json_text);
ToolConfig load_config(const std::filesystem::path& path);

/// Hex SHA-256 of a canonical JSON dump of the curation and filter settings.
std::string config_digest(const CurationConfig& curation, const FilterParams& filters);

} // namespace brokeneyes

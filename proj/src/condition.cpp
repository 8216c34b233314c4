#include "brokeneyes/condition.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace brokeneyes {

std::string_view condition_name(Condition c) noexcept
{
    switch (c) {
    case Condition::Normal: return "normal";
    case Condition::Amd: return "amd";
    case Condition::Cataract: return "cataract";
    case Condition::Glaucoma: return "glaucoma";
    case Condition::RefractiveError: return "refractive";
    case Condition::Retinopathy: return "retinopathy";
    }
    return "normal";
}

std::optional<Condition> parse_condition(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    for (Condition c : kAllConditions) {
        if (condition_name(c) == lower) return c;
    }
    return std::nullopt;
}

} // namespace brokeneyes

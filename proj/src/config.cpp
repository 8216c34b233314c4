#include "brokeneyes/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"

#include "brokeneyes/error.hpp"
#include "brokeneyes/sha256.hpp"

namespace brokeneyes {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what)
{
    throw Error(ErrorKind::Parse, "config " + where + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) bad(where, "must be an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : allowed) known = known || key == k;
        if (!known) bad(where, "unknown key \"" + key + "\"");
    }
}

void read_double(const json& obj, const std::string& where, const char* key, double& dst)
{
    if (auto it = obj.find(key); it != obj.end()) {
        if (!it->is_number()) bad(where + "." + key, "must be a number");
        dst = it->get<double>();
    }
}

template <typename Int>
void read_uint(const json& obj, const std::string& where, const char* key, Int& dst)
{
    if (auto it = obj.find(key); it != obj.end()) {
        if (!it->is_number_unsigned()) bad(where + "." + key, "must be a non-negative integer");
        const auto v = it->get<std::uint64_t>();
        if (v > std::numeric_limits<Int>::max()) bad(where + "." + key, "out of range");
        dst = static_cast<Int>(v);
    }
}

void read_int(const json& obj, const std::string& where, const char* key, int& dst)
{
    if (auto it = obj.find(key); it != obj.end()) {
        if (!it->is_number_integer()) bad(where + "." + key, "must be an integer");
        const auto v = it->get<std::int64_t>();
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
            bad(where + "." + key, "out of range");
        }
        dst = static_cast<int>(v);
    }
}

void parse_filters(const json& obj, FilterParams& f)
{
    only_keys(obj, "filters", {"glaucoma", "refractive", "amd", "retinopathy", "cataract"});
    if (auto it = obj.find("glaucoma"); it != obj.end()) {
        only_keys(*it, "filters.glaucoma", {"clear_radius_frac", "fade_radius_frac", "mask_blur_sigma_frac"});
        read_double(*it, "filters.glaucoma", "clear_radius_frac", f.glaucoma.clear_radius_frac);
        read_double(*it, "filters.glaucoma", "fade_radius_frac", f.glaucoma.fade_radius_frac);
        read_double(*it, "filters.glaucoma", "mask_blur_sigma_frac", f.glaucoma.mask_blur_sigma_frac);
    }
    if (auto it = obj.find("refractive"); it != obj.end()) {
        only_keys(*it, "filters.refractive", {"sigma_min", "sigma_max"});
        read_double(*it, "filters.refractive", "sigma_min", f.refractive.sigma_min);
        read_double(*it, "filters.refractive", "sigma_max", f.refractive.sigma_max);
    }
    if (auto it = obj.find("amd"); it != obj.end()) {
        only_keys(*it, "filters.amd", {"opaque_radius_frac", "fade_radius_frac", "mask_blur_sigma_frac"});
        read_double(*it, "filters.amd", "opaque_radius_frac", f.amd.opaque_radius_frac);
        read_double(*it, "filters.amd", "fade_radius_frac", f.amd.fade_radius_frac);
        read_double(*it, "filters.amd", "mask_blur_sigma_frac", f.amd.mask_blur_sigma_frac);
    }
    if (auto it = obj.find("retinopathy"); it != obj.end()) {
        only_keys(*it, "filters.retinopathy", {"count_min", "count_max", "axis_min_frac", "axis_max_frac"});
        read_int(*it, "filters.retinopathy", "count_min", f.retinopathy.count_min);
        read_int(*it, "filters.retinopathy", "count_max", f.retinopathy.count_max);
        read_double(*it, "filters.retinopathy", "axis_min_frac", f.retinopathy.axis_min_frac);
        read_double(*it, "filters.retinopathy", "axis_max_frac", f.retinopathy.axis_max_frac);
    }
    if (auto it = obj.find("cataract"); it != obj.end()) {
        only_keys(*it, "filters.cataract", {"saturation_scale", "haze_strength", "blur_sigma"});
        read_double(*it, "filters.cataract", "saturation_scale", f.cataract.saturation_scale);
        read_double(*it, "filters.cataract", "haze_strength", f.cataract.haze_strength);
        read_double(*it, "filters.cataract", "blur_sigma", f.cataract.blur_sigma);
    }
}

void parse_curation(const json& obj, CurationConfig& c)
{
    only_keys(obj, "curation", {"min_resolution", "target_size", "split_ratios", "balance_tolerance", "global_seed"});
    read_uint(obj, "curation", "min_resolution", c.min_resolution);
    read_uint(obj, "curation", "target_size", c.target_size);
    read_double(obj, "curation", "balance_tolerance", c.balance_tolerance);
    read_uint(obj, "curation", "global_seed", c.global_seed);
    if (auto it = obj.find("split_ratios"); it != obj.end()) {
        if (it->is_array()) {
            if (it->size() != 3 || !std::all_of(it->begin(), it->end(), [](const json& v) { return v.is_number(); })) {
                bad("curation.split_ratios", "must be three numbers [train, val, test]");
            }
            c.split_ratios = {(*it)[0].get<double>(), (*it)[1].get<double>(), (*it)[2].get<double>()};
        } else {
            only_keys(*it, "curation.split_ratios", {"train", "val", "test"});
            read_double(*it, "curation.split_ratios", "train", c.split_ratios.train);
            read_double(*it, "curation.split_ratios", "val", c.split_ratios.val);
            read_double(*it, "curation.split_ratios", "test", c.split_ratios.test);
        }
    }
}

} // namespace

ToolConfig parse_config(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("config: invalid JSON: ") + e.what());
    }

    ToolConfig cfg;
    only_keys(doc, "document", {"filters", "curation", "seed", "threads"});
    if (auto it = doc.find("filters"); it != doc.end()) parse_filters(*it, cfg.filters);
    if (auto it = doc.find("curation"); it != doc.end()) parse_curation(*it, cfg.curation);
    if (doc.contains("seed")) {
        std::uint64_t seed = 0;
        read_uint(doc, "document", "seed", seed);
        cfg.seed = seed;
    }
    read_uint(doc, "document", "threads", cfg.threads);

    cfg.filters.validate();
    cfg.curation.validate();
    return cfg;
}

ToolConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::NotFound, "cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string config_digest(const CurationConfig& c, const FilterParams& f)
{
    ordered_json doc;
    doc["curation"] = {
        {"min_resolution", c.min_resolution},
        {"target_size", c.target_size},
        {"split_ratios", {c.split_ratios.train, c.split_ratios.val, c.split_ratios.test}},
        {"balance_tolerance", c.balance_tolerance},
        {"global_seed", c.global_seed},
    };
    doc["filters"] = {
        {"glaucoma", {{"clear_radius_frac", f.glaucoma.clear_radius_frac},
                      {"fade_radius_frac", f.glaucoma.fade_radius_frac},
                      {"mask_blur_sigma_frac", f.glaucoma.mask_blur_sigma_frac}}},
        {"refractive", {{"sigma_min", f.refractive.sigma_min}, {"sigma_max", f.refractive.sigma_max}}},
        {"amd", {{"opaque_radius_frac", f.amd.opaque_radius_frac},
                 {"fade_radius_frac", f.amd.fade_radius_frac},
                 {"mask_blur_sigma_frac", f.amd.mask_blur_sigma_frac}}},
        {"retinopathy", {{"count_min", f.retinopathy.count_min},
                         {"count_max", f.retinopathy.count_max},
                         {"axis_min_frac", f.retinopathy.axis_min_frac},
                         {"axis_max_frac", f.retinopathy.axis_max_frac}}},
        {"cataract", {{"saturation_scale", f.cataract.saturation_scale},
                      {"haze_strength", f.cataract.haze_strength},
                      {"blur_sigma", f.cataract.blur_sigma}}},
    };
    return to_hex(sha256(doc.dump()));
}

} // namespace brokeneyes

#include "doctest.h"

#include "brokeneyes/config.hpp"
#include "brokeneyes/error.hpp"

using namespace brokeneyes;

TEST_CASE("empty document keeps defaults")
{
    const ToolConfig cfg = parse_config("{}");
    CHECK(cfg.filters.glaucoma.clear_radius_frac == 0.30);
    CHECK(cfg.filters.retinopathy.count_max == 15);
    CHECK(cfg.filters.cataract.blur_sigma == 4.0);
    CHECK(cfg.curation.min_resolution == 64);
    CHECK(cfg.curation.target_size == 224);
    CHECK(cfg.curation.split_ratios.train == 0.70);
    CHECK(cfg.curation.balance_tolerance == 0.10);
    CHECK(cfg.threads == 0);
    CHECK_FALSE(cfg.seed.has_value());
}

TEST_CASE("overrides")
{
    const ToolConfig cfg = parse_config(R"({
        "filters": {"refractive": {"sigma_min": 1.0, "sigma_max": 1.5},
                    "retinopathy": {"count_min": 2, "count_max": 2},
                    "cataract": {"haze_strength": 0.3}},
        "curation": {"min_resolution": 8, "target_size": 32, "split_ratios": [0.8, 0.1, 0.1],
                     "global_seed": 5},
        "threads": 3
    })");
    CHECK(cfg.filters.refractive.sigma_max == 1.5);
    CHECK(cfg.filters.retinopathy.count_min == 2);
    CHECK(cfg.filters.cataract.haze_strength == 0.3);
    CHECK(cfg.filters.cataract.saturation_scale == 0.35);
    CHECK(cfg.curation.target_size == 32);
    CHECK(cfg.curation.split_ratios.train == 0.8);
    CHECK(cfg.threads == 3);
    CHECK(cfg.effective_seed() == 5);

    CHECK(parse_config(R"({"seed": 9, "curation": {"global_seed": 5}})").effective_seed() == 9);
    CHECK(parse_config(R"({"curation": {"split_ratios": {"train": 0.6, "val": 0.2, "test": 0.2}}})")
              .curation.split_ratios.val == 0.2);
}

TEST_CASE("rejections")
{
    auto kind = [](const char* text) {
        try {
            parse_config(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    CHECK(kind(R"({"bogus": 1})") == ErrorKind::Parse);
    CHECK(kind(R"({"filters": {"myopia": {}}})") == ErrorKind::Parse);
    CHECK(kind(R"({"filters": {"amd": {"radius": 0.1}}})") == ErrorKind::Parse);
    CHECK(kind(R"({"curation": {"target_size": -1}})") == ErrorKind::Parse);
    CHECK(kind(R"({"threads": "four"})") == ErrorKind::Parse);
    CHECK(kind(R"({"curation": {"split_ratios": [0.5, 0.5]}})") == ErrorKind::Parse);
    CHECK(kind("{not json") == ErrorKind::Parse);
    CHECK(kind(R"({"curation": {"split_ratios": [0.5, 0.3, 0.3]}})") == ErrorKind::InvalidParameter);
    CHECK(kind(R"({"filters": {"glaucoma": {"clear_radius_frac": 0.9}}})") == ErrorKind::InvalidParameter);
    CHECK(kind(R"({"curation": {"balance_tolerance": 2}})") == ErrorKind::InvalidParameter);
}

TEST_CASE("config digest tracks settings")
{
    const ToolConfig a = parse_config("{}");
    const ToolConfig b = parse_config(R"({"filters": {"cataract": {"blur_sigma": 5}}})");
    CHECK(config_digest(a.curation, a.filters) == config_digest(a.curation, a.filters));
    CHECK(config_digest(a.curation, a.filters) != config_digest(b.curation, b.filters));
    CHECK(config_digest(a.curation, a.filters).size() == 64);
}

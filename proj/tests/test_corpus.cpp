#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "brokeneyes/corpus.hpp"
#include "brokeneyes/error.hpp"
#include "brokeneyes/image_io.hpp"
#include "brokeneyes/rng.hpp"
#include "support/fixtures.hpp"

using namespace brokeneyes;
namespace fs = std::filesystem;

namespace {

ImageRecord synthetic(std::size_t i, ClassLabel label, std::uint32_t w = 100, std::uint32_t h = 100)
{
    ImageRecord r;
    r.path = std::string(class_name(label)) + "/" + std::to_string(100000 + i) + ".png";
    r.class_label = label;
    r.width = w;
    r.height = h;
    r.sha256 = sha256(r.path);
    return r;
}

std::vector<ImageRecord> synthetic_class(std::size_t n, ClassLabel label)
{
    std::vector<ImageRecord> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(synthetic(i, label));
    return out;
}

std::map<Split, std::size_t> split_counts(const std::vector<ImageRecord>& records, ClassLabel label)
{
    std::map<Split, std::size_t> counts;
    for (const auto& r : records) {
        if (r.class_label == label) ++counts[r.split];
    }
    return counts;
}

} // namespace

TEST_CASE("scan_directory")
{
    fixtures::TempDir dir("scan");
    SUBCASE("empty directory")
    {
        CHECK(scan_directory(dir.path(), ClassLabel::Human).records.empty());
    }
    SUBCASE("valid and corrupt files")
    {
        write_png(fixtures::natural_image(70, 80, 1), dir / "b.png");
        write_png(fixtures::natural_image(90, 65, 2), dir / "a.png");
        fixtures::write_jpeg(fixtures::natural_image(64, 64, 3), dir / "c.jpg");
        std::ofstream(dir / "broken.png") << "not an image";

        const ScanResult first = scan_directory(dir.path(), ClassLabel::NonHuman);
        REQUIRE(first.records.size() == 3);
        CHECK(first.warnings.size() == 1);
        CHECK(first.warnings[0].find("broken.png") != std::string::npos);
        CHECK(fs::path(first.records[0].path).filename() == "a.png");
        CHECK(fs::path(first.records[1].path).filename() == "b.png");
        CHECK(fs::path(first.records[2].path).filename() == "c.jpg");
        CHECK(first.records[0].width == 90);
        CHECK(first.records[0].height == 65);
        CHECK(first.records[0].class_label == ClassLabel::NonHuman);
        CHECK(first.records[0].sha256 == sha256(fixtures::slurp(dir / "a.png")));

        const ScanResult second = scan_directory(dir.path(), ClassLabel::NonHuman);
        CHECK(second.records == first.records);
    }
    SUBCASE("missing directory")
    {
        try {
            scan_directory(dir / "missing", ClassLabel::Human);
            FAIL("expected not-found");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotFound);
        }
    }
}

TEST_CASE("filter_min_resolution")
{
    std::vector<ImageRecord> recs = {synthetic(0, ClassLabel::Human, 32, 500), synthetic(1, ClassLabel::Human, 64, 64),
                                     synthetic(2, ClassLabel::Human, 500, 63), synthetic(3, ClassLabel::Human, 640, 480)};
    const auto kept = filter_min_resolution(recs, 64);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].path == recs[1].path);
    CHECK(kept[1].path == recs[3].path);
    CHECK(filter_min_resolution(recs, 0) == recs);
}

TEST_CASE("dedup_by_hash")
{
    auto recs = synthetic_class(6, ClassLabel::Human);
    CHECK(dedup_by_hash(recs) == recs);

    recs[4].sha256 = recs[1].sha256;
    recs[5].sha256 = recs[1].sha256;
    const auto once = dedup_by_hash(recs);
    REQUIRE(once.size() == 4);
    CHECK(std::count_if(once.begin(), once.end(), [&](const auto& r) { return r.path == recs[1].path; }) == 1);
    CHECK(dedup_by_hash(once) == once);

    // Same retained set whatever the input order.
    auto shuffled = recs;
    std::reverse(shuffled.begin(), shuffled.end());
    std::set<std::string> a, b;
    for (const auto& r : once) a.insert(r.path);
    for (const auto& r : dedup_by_hash(shuffled)) b.insert(r.path);
    CHECK(a == b);
}

TEST_CASE("dedup of byte-identical files keeps the first path")
{
    fixtures::TempDir dir("dedup");
    const RgbImage img = fixtures::natural_image(64, 64, 8);
    write_png(img, dir / "z_copy.png");
    write_png(img, dir / "a_orig.png");
    write_png(fixtures::natural_image(64, 64, 9), dir / "m_other.png");
    const auto kept = dedup_by_hash(scan_directory(dir.path(), ClassLabel::Human).records);
    REQUIRE(kept.size() == 2);
    CHECK(fs::path(kept[0].path).filename() == "a_orig.png");
    CHECK(fs::path(kept[1].path).filename() == "m_other.png");
}

TEST_CASE("balance_classes")
{
    SUBCASE("within tolerance")
    {
        auto [h, n] = balance_classes(synthetic_class(1414, ClassLabel::Human),
                                      synthetic_class(1309, ClassLabel::NonHuman), 0.10, 1);
        CHECK(h.size() == 1414);
        CHECK(n.size() == 1309);
    }
    SUBCASE("equal")
    {
        auto [h, n] = balance_classes(synthetic_class(100, ClassLabel::Human),
                                      synthetic_class(100, ClassLabel::NonHuman), 0.0, 1);
        CHECK(h.size() == 100);
        CHECK(n.size() == 100);
    }
    SUBCASE("truncates the larger class")
    {
        const auto human = synthetic_class(300, ClassLabel::Human);
        auto [h, n] = balance_classes(human, synthetic_class(100, ClassLabel::NonHuman), 0.10, 1);
        CHECK(h.size() == 110);
        CHECK(n.size() == 100);
        CHECK(std::is_sorted(h.begin(), h.end(), [](const auto& a, const auto& b) { return a.path < b.path; }));

        auto [h2, n2] = balance_classes(human, synthetic_class(100, ClassLabel::NonHuman), 0.10, 1);
        CHECK(h2 == h);
        auto [h3, n3] = balance_classes(human, synthetic_class(100, ClassLabel::NonHuman), 0.10, 2);
        CHECK(h3 != h);

        auto [n4, h4] = balance_classes(synthetic_class(50, ClassLabel::Human),
                                        synthetic_class(300, ClassLabel::NonHuman), 0.10, 1);
        CHECK(n4.size() == 50);
        CHECK(h4.size() == 55);
    }
    SUBCASE("empty class")
    {
        try {
            balance_classes({}, synthetic_class(3, ClassLabel::NonHuman), 0.1, 0);
            FAIL("expected empty-class");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::EmptyClass);
        }
    }
}

TEST_CASE("split arithmetic")
{
    const SplitRatios defaults;
    const auto [tr, va, te] = split_sizes(10, defaults);
    CHECK(tr == 7);
    CHECK(va == 1);
    CHECK(te == 2);

    const auto sizes = split_sizes(2723, defaults);
    CHECK(sizes[0] == 1906);
    CHECK(sizes[1] == 408);
    CHECK(sizes[2] == 409);

    for (std::size_t n = 1; n < 500; ++n) {
        const auto s = split_sizes(n, defaults);
        REQUIRE(s[0] + s[1] + s[2] == n);
        REQUIRE(s[0] == static_cast<std::size_t>(7 * n / 10));
        REQUIRE(s[1] == static_cast<std::size_t>(15 * n / 100));
    }
}

TEST_CASE("stratified_split assigns every record once per class")
{
    std::vector<ImageRecord> all = synthetic_class(1414, ClassLabel::Human);
    const auto non = synthetic_class(1309, ClassLabel::NonHuman);
    all.insert(all.end(), non.begin(), non.end());

    const auto split = stratified_split(all, {}, 7);
    REQUIRE(split.size() == all.size());
    for (std::size_t i = 0; i < all.size(); ++i) REQUIRE(split[i].path == all[i].path);
    CHECK(std::none_of(split.begin(), split.end(), [](const auto& r) { return r.split == Split::Unassigned; }));

    // Per-class floors give 989 + 916 = 1905 train; the pooled 1906th slot
    // goes to human (fraction .8 vs .3).
    auto h = split_counts(split, ClassLabel::Human);
    CHECK(h[Split::Train] == 990);
    CHECK(h[Split::Val] == 212);
    CHECK(h[Split::Test] == 212);
    auto n = split_counts(split, ClassLabel::NonHuman);
    CHECK(n[Split::Train] == 916);
    CHECK(n[Split::Val] == 196);
    CHECK(n[Split::Test] == 197);

    std::size_t test_total = 0;
    for (const auto& r : split) test_total += r.split == Split::Test;
    CHECK(test_total == 409);

    CHECK(stratified_split(all, {}, 7) == split);
    CHECK(stratified_split(all, {}, 8) != split);

    CHECK_THROWS_AS(stratified_split(synthetic_class(5, ClassLabel::Human), {}, 1), Error);
}

TEST_CASE("stratified_split totals follow the pooled floor/remainder rule")
{
    for (std::size_t nh = 1; nh < 40; ++nh) {
        for (std::size_t nn = 1; nn < 40; nn += 3) {
            std::vector<ImageRecord> all = synthetic_class(nh, ClassLabel::Human);
            const auto non = synthetic_class(nn, ClassLabel::NonHuman);
            all.insert(all.end(), non.begin(), non.end());
            const auto split = stratified_split(all, {}, nh * 100 + nn);
            const auto pooled = split_sizes(nh + nn, {});
            auto h = split_counts(split, ClassLabel::Human);
            auto n = split_counts(split, ClassLabel::NonHuman);
            REQUIRE(h[Split::Train] + n[Split::Train] == pooled[0]);
            REQUIRE(h[Split::Val] + n[Split::Val] == pooled[1]);
            REQUIRE(h[Split::Test] + n[Split::Test] == pooled[2]);
            const auto ph = split_sizes(nh, {});
            for (int part = 0; part < 2; ++part) {
                const Split s = part == 0 ? Split::Train : Split::Val;
                REQUIRE(h[s] >= ph[part]);
                REQUIRE(h[s] <= ph[part] + 1);
            }
        }
    }
    CHECK_THROWS_AS(stratified_split(synthetic_class(4, ClassLabel::Human), {0.5, 0.2, 0.2}, 1), Error);
}

TEST_CASE("resize_image")
{
    const RgbImage img = fixtures::natural_image(224, 224, 4);
    CHECK(resize_image(img, 224) == img);

    const RgbImage flat(300, 170, {12, 34, 56});
    const RgbImage small = resize_image(flat, 224);
    CHECK(small.width() == 224);
    CHECK(small.height() == 224);
    for (const Rgb& p : small.pixels()) REQUIRE(p == Rgb{12, 34, 56});

    RgbImage checker(2, 2);
    checker.at(0, 0) = checker.at(1, 1) = {255, 255, 255};
    CHECK(resize_image(checker, 1).at(0, 0) == Rgb{128, 128, 128});

    // Upscale 2 -> 4: half-pixel centers land at 0.25 offsets.
    RgbImage ramp(2, 1);
    ramp.at(0, 0) = {0, 0, 0};
    ramp.at(1, 0) = {200, 200, 200};
    const RgbImage up = resize_image(ramp, 4);
    CHECK(up.at(0, 0).r == 0);
    CHECK(up.at(1, 0).r == 50);
    CHECK(up.at(2, 0).r == 150);
    CHECK(up.at(3, 0).r == 200);
}

TEST_CASE("unique_png_names")
{
    const auto names = unique_png_names({"d/a.png", "d/a.jpg", "d/b.jpeg", "e/a.png"});
    CHECK(names == std::vector<std::string>{"a.png", "a_jpg.png", "b.png", "a_png.png"});
}

TEST_CASE("generate_dataset fans out six conditions")
{
    fixtures::TempDir src("gen_src");
    fixtures::TempDir out("gen_out");
    write_png(fixtures::natural_image(90, 70, 1), src / "only.png");
    auto records = scan_directory(src.path(), ClassLabel::Human).records;
    records[0].split = Split::Test;

    const Manifest m = generate_dataset(records, {}, {}, 3, out.path(), {64, 2});
    REQUIRE(m.records.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        const ImageRecord& r = m.records[k];
        CHECK(r.condition == kAllConditions[k]);
        CHECK(r.split == Split::Test);
        CHECK(r.width == 64);
        CHECK(r.path == std::string(condition_name(r.condition)) + "/human/only.png");
        CHECK(r.sha256 == sha256(fixtures::slurp(out / r.path)));
    }
    // The normal output is the resized source.
    CHECK(read_image(out / "normal/human/only.png") == resize_image(read_image(src / "only.png"), 64));
    CHECK(fs::is_directory(out / "glaucoma/non_human"));
}

TEST_CASE("generate_dataset is deterministic across runs and thread counts")
{
    fixtures::TempDir src("det_src");
    fixtures::TempDir a("det_a");
    fixtures::TempDir b("det_b");
    fixtures::write_corpus(src / "h", "h", 6, 80, 1);
    fixtures::write_corpus(src / "n", "n", 5, 80, 2);
    const auto human = scan_directory(src / "h", ClassLabel::Human).records;
    const auto non = scan_directory(src / "n", ClassLabel::NonHuman).records;

    const Manifest ma = generate_dataset(human, non, {}, 99, a.path(), {48, 1});
    const Manifest mb = generate_dataset(human, non, {}, 99, b.path(), {48, 8});
    CHECK(ma.records == mb.records);
    CHECK(fixtures::tree_contents(a.path()) == fixtures::tree_contents(b.path()));

    std::map<std::pair<Condition, ClassLabel>, int> counts;
    for (const auto& r : ma.records) ++counts[{r.condition, r.class_label}];
    for (Condition c : kAllConditions) {
        CHECK(counts[{c, ClassLabel::Human}] == 6);
        CHECK(counts[{c, ClassLabel::NonHuman}] == 5);
    }
}

TEST_CASE("generate_dataset reports unwritable output")
{
    fixtures::TempDir tmp("unwritable");
    std::ofstream(tmp / "file") << "x";
    try {
        generate_dataset(synthetic_class(1, ClassLabel::Human), {}, {}, 0, tmp / "file" / "sub");
        FAIL("expected io-error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

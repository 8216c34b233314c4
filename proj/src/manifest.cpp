#include <cstdlib>
#include <ctime>
#include <fstream>
#include <string>

#include "json.hpp"

#include "brokeneyes/corpus.hpp"
#include "brokeneyes/error.hpp"

namespace brokeneyes {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

fs::path meta_path(const fs::path& manifest_path)
{
    fs::path p = manifest_path;
    p.replace_extension(".meta.json");
    return p;
}

std::string utc_timestamp()
{
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
        char* end = nullptr;
        const long long v = std::strtoll(epoch, &end, 10);
        if (end != nullptr && *end == '\0') t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const Manifest& manifest, const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open for writing: " + path.string());
    for (const ImageRecord& r : manifest.records) {
        ordered_json line;
        line["path"] = r.path;
        line["class"] = class_name(r.class_label);
        line["condition"] = condition_name(r.condition);
        line["split"] = split_name(r.split);
        line["sha256"] = to_hex(r.sha256);
        line["width"] = r.width;
        line["height"] = r.height;
        out << line.dump() << '\n';
    }
    if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());

    if (!manifest.created_at.empty() || !manifest.config_digest.empty()) {
        ordered_json meta;
        meta["created_at"] = manifest.created_at;
        meta["config_digest"] = manifest.config_digest;
        meta["record_count"] = manifest.records.size();
        std::ofstream m(meta_path(path), std::ios::binary | std::ios::trunc);
        m << meta.dump(2) << '\n';
        if (!m) throw Error(ErrorKind::Io, "write failed: " + meta_path(path).string());
    }
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what)
{
    throw Error(ErrorKind::Parse, "manifest line " + std::to_string(line) + ": " + what);
}

const ordered_json& field(const ordered_json& obj, const char* name, std::size_t line)
{
    auto it = obj.find(name);
    if (it == obj.end()) parse_fail(line, std::string("missing field \"") + name + "\"");
    return *it;
}

std::string string_field(const ordered_json& obj, const char* name, std::size_t line)
{
    const ordered_json& v = field(obj, name, line);
    if (!v.is_string()) parse_fail(line, std::string("field \"") + name + "\" must be a string");
    return v.get<std::string>();
}

std::uint32_t dim_field(const ordered_json& obj, const char* name, std::size_t line)
{
    const ordered_json& v = field(obj, name, line);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xFFFFFFFFULL) {
        parse_fail(line, std::string("field \"") + name + "\" must be an unsigned 32-bit integer");
    }
    return static_cast<std::uint32_t>(v.get<std::uint64_t>());
}

ImageRecord parse_record(const std::string& text, std::size_t line)
{
    ordered_json obj;
    try {
        obj = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(line, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) parse_fail(line, "record must be a JSON object");

    ImageRecord r;
    r.path = string_field(obj, "path", line);
    const std::string cls = string_field(obj, "class", line);
    const std::string cond = string_field(obj, "condition", line);
    const std::string split = string_field(obj, "split", line);
    const std::string hash = string_field(obj, "sha256", line);

    const auto c = parse_class(cls);
    if (!c) parse_fail(line, "unknown class \"" + cls + "\"");
    const auto k = parse_condition(cond);
    if (!k) parse_fail(line, "unknown condition \"" + cond + "\"");
    const auto s = parse_split(split);
    if (!s) parse_fail(line, "unknown split \"" + split + "\"");
    const auto d = digest_from_hex(hash);
    if (!d) parse_fail(line, "sha256 must be 64 hex digits");

    r.class_label = *c;
    r.condition = *k;
    r.split = *s;
    r.sha256 = *d;
    r.width = dim_field(obj, "width", line);
    r.height = dim_field(obj, "height", line);
    return r;
}

} // namespace

Manifest read_manifest(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::NotFound, "cannot open manifest " + path.string());

    Manifest manifest;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        if (text.empty()) continue;
        manifest.records.push_back(parse_record(text, line));
    }

    const fs::path meta = meta_path(path);
    if (fs::exists(meta)) {
        std::ifstream m(meta, std::ios::binary);
        try {
            const ordered_json j = ordered_json::parse(m);
            manifest.created_at = j.value("created_at", "");
            manifest.config_digest = j.value("config_digest", "");
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Parse, meta.string() + ": " + e.what());
        }
    }
    return manifest;
}

} // namespace brokeneyes

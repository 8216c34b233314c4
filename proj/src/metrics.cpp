#include "brokeneyes/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include "brokeneyes/error.hpp"
#include "brokeneyes/parallel.hpp"

namespace brokeneyes {

namespace {

void require_same_shape(const FeatureTensor& a, const FeatureTensor& b)
{
    if (!a.same_shape(b)) {
        auto dims = [](const FeatureTensor& t) {
            return std::to_string(t.channels()) + "x" + std::to_string(t.height()) + "x" + std::to_string(t.width());
        };
        throw Error(ErrorKind::Shape, "tensor shapes differ: " + dims(a) + " vs " + dims(b));
    }
}

} // namespace

double activation_energy(const FeatureTensor& t)
{
    double sum = 0.0;
    for (float v : t.values()) sum += std::fabs(static_cast<double>(v));
    return sum;
}

double cosine_similarity(const FeatureTensor& a, const FeatureTensor& b)
{
    require_same_shape(a, b);
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    auto av = a.values();
    auto bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) {
        const double x = av[i];
        const double y = bv[i];
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if (na == 0.0 || nb == 0.0) {
        throw Error(ErrorKind::DegenerateInput, "cosine similarity undefined for an all-zero tensor");
    }
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

Plane deviation_field(const FeatureTensor& a, const FeatureTensor& b)
{
    require_same_shape(a, b);
    Plane field(a.width(), a.height());
    if (a.channels() == 0) return field;
    for (std::uint32_t c = 0; c < a.channels(); ++c) {
        for (std::uint32_t y = 0; y < a.height(); ++y) {
            for (std::uint32_t x = 0; x < a.width(); ++x) {
                field.at(x, y) += std::fabs(static_cast<double>(a.at(c, y, x)) - b.at(c, y, x));
            }
        }
    }
    for (double& v : field.values) v /= a.channels();
    return field;
}

RgbImage diff_heatmap(const FeatureTensor& a, const FeatureTensor& b)
{
    const Plane field = deviation_field(a, b);
    if (field.values.empty()) throw Error(ErrorKind::Shape, "heatmap needs H, W >= 1");

    const auto [lo, hi] = std::minmax_element(field.values.begin(), field.values.end());
    const double span = *hi - *lo;
    RgbImage out(field.width, field.height);
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        const double v = span > 0.0 ? (field.values[i] - *lo) / span : 0.0;
        out.pixels()[i] = {to_channel(255.0 * v), 0, to_channel(255.0 * (1.0 - v))};
    }
    return out;
}

std::vector<MetricsRecord> compare_conditions(const std::filesystem::path& baseline,
                                              const std::map<Condition, std::filesystem::path>& disorders,
                                              unsigned threads)
{
    for (Condition c : kDisorders) {
        if (!disorders.contains(c)) {
            throw Error(ErrorKind::NotFound, "no tensor given for condition " + std::string(condition_name(c)));
        }
    }
    const FeatureTensor base = read_tensor(baseline);

    std::vector<MetricsRecord> records(kDisorders.size());
    parallel_for(kDisorders.size(), threads, [&](std::size_t i) {
        const Condition c = kDisorders[i];
        try {
            const FeatureTensor t = read_tensor(disorders.at(c));
            records[i] = {c, activation_energy(t), cosine_similarity(base, t)};
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(condition_name(c)) + ": " + e.what());
        }
    });
    return records;
}

namespace {

std::string six_significant(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

void write_report(const std::vector<MetricsRecord>& records, const std::filesystem::path& path,
                  ReportFormat format)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open for writing: " + path.string());

    if (format == ReportFormat::Csv) {
        out << "condition,activation_energy,cosine_similarity\n";
        for (const MetricsRecord& r : records) {
            out << condition_name(r.condition) << ',' << six_significant(r.activation_energy) << ','
                << six_significant(r.cosine_similarity) << '\n';
        }
    } else {
        // Hand-written so the numbers keep exactly six significant digits.
        out << '[';
        for (std::size_t i = 0; i < records.size(); ++i) {
            const MetricsRecord& r = records[i];
            out << (i == 0 ? "\n" : ",\n") << "  {\"condition\": \"" << condition_name(r.condition)
                << "\", \"activation_energy\": " << six_significant(r.activation_energy)
                << ", \"cosine_similarity\": " << six_significant(r.cosine_similarity) << '}';
        }
        out << (records.empty() ? "]\n" : "\n]\n");
    }
    if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

} // namespace brokeneyes

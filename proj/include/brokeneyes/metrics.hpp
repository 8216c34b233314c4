#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include "brokeneyes/condition.hpp"
#include "brokeneyes/image.hpp"
#include "brokeneyes/tensor.hpp"

namespace brokeneyes {

/// Sum of |value| over every element, accumulated in f64 in storage order.
double activation_energy(const FeatureTensor& t);

/// Cosine of the angle between the flattened tensors, clamped to [-1, 1].
/// Throws Shape on mismatched shapes, DegenerateInput if either is all-zero.
double cosine_similarity(const FeatureTensor& a, const FeatureTensor& b);

/// Channel-mean absolute difference at each spatial position (H x W).
Plane deviation_field(const FeatureTensor& a, const FeatureTensor& b);

/// deviation_field, min-max normalized (constant field -> 0), colored
/// v -> (round(255 v), 0, round(255 (1 - v))).
RgbImage diff_heatmap(const FeatureTensor& a, const FeatureTensor& b);

struct MetricsRecord {
    Condition condition = Condition::Amd;
    double activation_energy = 0.0;
    double cosine_similarity = 0.0;
};

/// One record per disorder in kDisorders order. Every disorder must be
/// present in the map; errors name the offending condition.
std::vector<MetricsRecord> compare_conditions(const std::filesystem::path& baseline,
                                              const std::map<Condition, std::filesystem::path>& disorders,
                                              unsigned threads = 1);

enum class ReportFormat { Json, Csv };

void write_report(const std::vector<MetricsRecord>& records,
                  const std::filesystem::path& path, ReportFormat format);

} // namespace brokeneyes

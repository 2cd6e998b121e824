#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modshift/analysis.hpp"
#include "modshift/embedding.hpp"

namespace modshift {

enum class ModalityClass { text_text, text_multimodal, multimodal_multimodal };
std::string_view to_string(ModalityClass c);
ModalityClass classify(Modality a, Modality b);

/// Adjusted R^2 as a percentage with two decimals: 0.1673 -> "16.73".
std::string format_percent(double value);
/// "21.00 (+4.27)" for a value with a delta over the combined baseline.
std::string format_cell(double value, std::optional<double> delta = std::nullopt);

/// One analyzed space pair. The ratio is d_a / d_b; `anchor` names the
/// space whose table the comparison belongs to.
struct ComparisonAnalysis {
  std::string a;
  std::string b;
  std::string anchor;
  ModalityClass modality_class = ModalityClass::text_multimodal;
  GroupedAnalysis analysis;
};

enum class TableFormat { csv, md, json };
TableFormat parse_table_format(std::string_view s);  // throws ConfigError

/// One table per anchor space: one column per compared space, one row
/// per predictor set. Returns the written paths in a stable order.
std::vector<std::filesystem::path> emit_table(std::span<const ComparisonAnalysis> results,
                                              TableFormat format,
                                              const std::filesystem::path& out_dir);

/// Box statistics with linearly interpolated quartiles and whiskers at
/// 0.5 IQR beyond the box.
struct BoxplotSummary {
  std::size_t count = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;
};

/// Linear-interpolation quantile of unsorted values; q in [0, 1].
double quantile_linear(std::vector<double> values, double q);
BoxplotSummary boxplot_summary(std::span<const double> values, double whisker_iqr = 0.5);

/// A per-comparison contribution value for one feature or group.
struct ContributionRecord {
  std::string comparison;
  ModalityClass modality_class = ModalityClass::text_multimodal;
  std::string feature;
  double delta = 0.0;
};

/// Box summaries per feature and modality class; classes with fewer than
/// two comparisons are omitted and listed under "warnings". Writes
/// `<stem>.json` and a long-form `<stem>.csv` of the raw values.
std::vector<std::filesystem::path> emit_boxplot_data(std::span<const ContributionRecord> records,
                                                     const std::filesystem::path& out_dir,
                                                     const std::string& stem,
                                                     const std::string& label);

struct SimilarityHistogram {
  std::string space;
  std::vector<double> edges;  // bins + 1 edges over [-1, 1]
  std::vector<std::size_t> counts;
  double mean = 0.0;
  double stddev = 0.0;  // population
};

/// Histogram of pair similarities (1 - distance) with equal-width bins over
/// [-1, 1]; similarity 1 falls in the last bin.
SimilarityHistogram similarity_histogram(const std::string& space,
                                         std::span<const double> distances, std::size_t bins);

std::vector<std::filesystem::path> emit_distance_distributions(
    std::span<const SimilarityHistogram> histograms, const std::filesystem::path& out_dir);

}  // namespace modshift

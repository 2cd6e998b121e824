#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modshift/analysis.hpp"
#include "modshift/embedding.hpp"
#include "modshift/lexicon.hpp"
#include "modshift/pairs.hpp"
#include "modshift/report.hpp"

namespace modshift {

enum class EmbeddingFormat { fasttext, tsv };

struct SpaceConfig {
  std::string id;
  std::filesystem::path path;
  EmbeddingFormat format = EmbeddingFormat::tsv;
  EmbeddingMeta meta;
};

// Ratio orientation for a comparison.
enum class RatioDirection { text_over_multimodal, as_given };

struct ComparisonConfig {
  std::string a;  // as written in the config; see resolve()
  std::string b;
  std::optional<std::string> anchor;
  RatioDirection direction = RatioDirection::text_over_multimodal;
};

/// A comparison after orientation: ratio = d_numerator / d_denominator.
struct ResolvedComparison {
  std::string numerator;
  std::string denominator;
  std::string anchor;
  ModalityClass modality_class = ModalityClass::text_multimodal;

  std::string label() const { return numerator + "/" + denominator; }
};

/// Baseline used for per-feature contributions.
enum class ContributionBaseline { intercept, frequency, concreteness, combined };
PredictorSet contribution_baseline(ContributionBaseline b);

struct RunConfig {
  std::filesystem::path source;  // config file, if parsed from one
  std::vector<SpaceConfig> spaces;
  std::string pair_source;
  LexiconPaths lexicon;
  PairBuildConfig pairs;
  std::vector<ComparisonConfig> comparisons;
  std::vector<PredictorSet> groups = standard_groups();
  ContributionMode contribution_mode = ContributionMode::single_over_baseline;
  ContributionBaseline contribution_baseline_kind = ContributionBaseline::frequency;
  std::vector<std::string> contribution_features = word_level_features();
  double eps = 1e-9;
  std::size_t bins = 50;
  std::vector<TableFormat> table_formats = {TableFormat::csv, TableFormat::md, TableFormat::json};
  std::filesystem::path output_dir = "run";
  std::uint64_t seed = 0;  // reserved; every stage is deterministic

  const SpaceConfig& space(const std::string& id) const;  // throws ConfigError
  std::vector<ResolvedComparison> resolved_comparisons() const;
  /// Canonical JSON (absolute paths) used for fingerprints and the manifest.
  nlohmann::ordered_json to_json() const;
};

/// Parses a JSON config; relative paths resolve against the file's directory.
RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// Checks every referenced path and cross-reference. Throws ConfigError.
void validate(const RunConfig& cfg);

}  // namespace modshift

#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "modshift/config.hpp"
#include "modshift/report.hpp"

namespace modshift {

enum class Stage { ingest, pairs, annotate, distances, regress, report };
inline constexpr std::array<Stage, 6> kStages = {Stage::ingest,    Stage::pairs,
                                                 Stage::annotate,  Stage::distances,
                                                 Stage::regress,   Stage::report};
std::string_view to_string(Stage s);
Stage parse_stage(std::string_view s);  // throws ConfigError

/// Per-pair distances in every space plus ratio/rank columns per comparison.
struct DistanceArtifact {
  std::vector<std::string> seeds;
  std::vector<std::string> neighbors;
  std::vector<std::string> spaces;  // column order
  std::map<std::string, std::vector<double>> distances;
  std::vector<std::string> comparisons;  // "numerator/denominator"
  std::map<std::string, std::vector<double>> ratios;
  std::map<std::string, std::vector<double>> ranks;
};

void write_distances(const DistanceArtifact& d, const std::filesystem::path& path);
DistanceArtifact read_distances(const std::filesystem::path& path);

struct ComparisonContributions {
  std::string comparison;
  ModalityClass modality_class = ModalityClass::text_multimodal;
  std::vector<FeatureContribution> features;
};

/// Everything the report stage needs from the regression stage.
struct RegressArtifact {
  std::string contribution_mode;
  std::string contribution_baseline;
  std::vector<ComparisonAnalysis> comparisons;
  std::vector<ComparisonContributions> contributions;

  std::vector<ContributionRecord> feature_records() const;
  std::vector<ContributionRecord> group_records() const;
};

void write_analysis(const RegressArtifact& a, const std::filesystem::path& path);
RegressArtifact read_analysis(const std::filesystem::path& path);

struct PipelineOptions {
  Stage until = Stage::report;
  bool resume = false;
  std::ostream* log = nullptr;
};

struct StageRecord {
  std::string name;
  std::string status;  // "completed" | "resumed" | "failed"
  std::string fingerprint;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();  // run-relative path -> sha256
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  double seconds = 0.0;
  std::string error;
};

struct PipelineResult {
  std::filesystem::path run_dir;
  std::vector<StageRecord> stages;
};

/// Runs ingest -> pairs -> annotate -> distances -> regress -> report into
/// cfg.output_dir, stopping after `opts.until`. Each stage writes its
/// artifacts under <run>/<stage>/ and a manifest entry to
/// <run>/manifest.json. With `resume`, a stage whose fingerprint and
/// outputs match the previous manifest is loaded instead of recomputed.
/// Errors keep their type and name the failing stage.
PipelineResult run_pipeline(const RunConfig& cfg, const PipelineOptions& opts = {});

}  // namespace modshift

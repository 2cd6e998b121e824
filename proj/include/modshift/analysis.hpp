#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modshift/annotation.hpp"
#include "modshift/regression.hpp"

namespace modshift {

/// One row of a grouped analysis: a fit plus, for "+group" rows, the
/// change in adjusted R^2 over the combined baseline.
struct AnalysisRow {
  std::string name;  // "concreteness", "frequency", "concreteness+frequency", "+<group>"
  RegressionResult result;
  std::optional<double> delta;
};

struct GroupedAnalysis {
  std::vector<AnalysisRow> rows;
};

/// Fits the three baselines (concreteness, frequency, both) and then the
/// combined baseline plus each group.
GroupedAnalysis grouped_analysis(const AnnotationTable& table, std::span<const double> ranks,
                                 std::span<const PredictorSet> groups);

enum class ContributionMode {
  /// adjR2(baseline + f) - adjR2(baseline)
  single_over_baseline,
  /// adjR2(context) - adjR2(context without f), where the context is the
  /// baseline plus the standard group that contains f.
  group_ablation,
};

std::string_view to_string(ContributionMode m);
ContributionMode parse_contribution_mode(std::string_view s);  // throws ConfigError

struct FeatureContribution {
  std::string feature;
  double delta = 0.0;
  double adj_r2_with = 0.0;
  double adj_r2_without = 0.0;
  bool dropped = false;  // f was constant and contributed nothing
};

/// Per-feature explanatory contribution. A feature already in `baseline`
/// (single_over_baseline mode) adds nothing and gets delta 0.
std::vector<FeatureContribution> single_feature_contributions(
    const AnnotationTable& table, std::span<const double> ranks,
    std::span<const std::string> features, const PredictorSet& baseline,
    ContributionMode mode = ContributionMode::single_over_baseline);

}  // namespace modshift

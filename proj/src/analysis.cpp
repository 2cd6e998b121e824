#include "modshift/analysis.hpp"

#include <algorithm>

#include "modshift/error.hpp"

namespace modshift {

GroupedAnalysis grouped_analysis(const AnnotationTable& table, std::span<const double> ranks,
                                 std::span<const PredictorSet> groups) {
  if (groups.empty()) throw ConfigError("grouped_analysis: no predictor groups");
  GroupedAnalysis out;
  for (const auto& base : {concreteness_baseline(), frequency_baseline(), combined_baseline()}) {
    const auto design = design_matrix(table, base.features);
    out.rows.push_back({base.name, ols_fit(design, ranks), std::nullopt});
  }
  const double combined = out.rows.back().result.adj_r2;
  for (const auto& g : groups) {
    validate_predictor_set(g);
    auto result = ols_fit(design_matrix(table, g, true), ranks);
    const double delta = result.adj_r2 - combined;
    out.rows.push_back({"+" + g.name, std::move(result), delta});
  }
  return out;
}

std::string_view to_string(ContributionMode m) {
  return m == ContributionMode::single_over_baseline ? "single_over_baseline" : "group_ablation";
}

ContributionMode parse_contribution_mode(std::string_view s) {
  if (s == "single_over_baseline") return ContributionMode::single_over_baseline;
  if (s == "group_ablation") return ContributionMode::group_ablation;
  throw ConfigError("unknown contribution mode: " + std::string(s));
}

namespace {

double fit_adj_r2(const AnnotationTable& table, std::span<const double> ranks,
                  const std::vector<std::string>& features) {
  return ols_fit(design_matrix(table, features), ranks).adj_r2;
}

bool is_constant(std::span<const double> col) {
  return std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); });
}

std::vector<std::string> without(std::vector<std::string> v, const std::string& f) {
  std::erase(v, f);
  return v;
}

bool contains(const std::vector<std::string>& v, const std::string& f) {
  return std::find(v.begin(), v.end(), f) != v.end();
}

}  // namespace

std::vector<FeatureContribution> single_feature_contributions(
    const AnnotationTable& table, std::span<const double> ranks,
    std::span<const std::string> features, const PredictorSet& baseline, ContributionMode mode) {
  std::vector<FeatureContribution> out;
  const auto groups = standard_groups();

  if (mode == ContributionMode::single_over_baseline) {
    const double base = fit_adj_r2(table, ranks, baseline.features);
    for (const auto& f : features) {
      FeatureContribution c{f, 0.0, base, base, false};
      if (is_constant(table.column(f))) {
        c.dropped = true;
      } else if (!contains(baseline.features, f)) {
        auto with = baseline.features;
        with.push_back(f);
        c.adj_r2_with = fit_adj_r2(table, ranks, with);
        c.delta = c.adj_r2_with - base;
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  for (const auto& f : features) {
    std::vector<std::string> context = baseline.features;
    if (!contains(context, f)) {
      for (const auto& g : groups) {
        if (!contains(g.features, f)) continue;
        for (const auto& gf : g.features)
          if (!contains(context, gf)) context.push_back(gf);
        break;
      }
      if (!contains(context, f)) context.push_back(f);
    }
    FeatureContribution c{f, 0.0, 0.0, 0.0, false};
    c.adj_r2_with = fit_adj_r2(table, ranks, context);
    if (is_constant(table.column(f))) {
      c.dropped = true;
      c.adj_r2_without = c.adj_r2_with;
    } else {
      c.adj_r2_without = fit_adj_r2(table, ranks, without(context, f));
      c.delta = c.adj_r2_with - c.adj_r2_without;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace modshift

#include <doctest.h>

#include <algorithm>
#include <random>

#include "modshift/analysis.hpp"
#include "modshift/error.hpp"
#include "modshift/ranking.hpp"

using namespace modshift;

namespace {

// All 78 columns filled at random: numeric columns as ranks, the rest as
// sparse booleans. One supersense column is left constant.
AnnotationTable random_table(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  std::bernoulli_distribution coin(0.2);
  AnnotationTable t(std::vector<std::string>(n, "s"), std::vector<std::string>(n, "n"));
  for (const auto& name : all_feature_names()) {
    std::vector<double> v(n);
    const bool boolean = name.find(".supersense.") != std::string::npos || name.rfind("pair.", 0) == 0;
    if (name == "seed.supersense.Tops") {
      std::fill(v.begin(), v.end(), 0.0);
    } else if (boolean) {
      for (auto& x : v) x = coin(rng) ? 1.0 : 0.0;
    } else {
      for (auto& x : v) x = normal(rng);
      v = rank_transform(v);
    }
    t.add_column(name, std::move(v));
  }
  return t;
}

std::vector<double> response(std::mt19937_64& rng, const AnnotationTable& t, const std::string& driver,
                             double noise) {
  std::normal_distribution<double> normal;
  const auto c = t.column(driver);
  std::vector<double> y(t.rows());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = c[i] + noise * normal(rng);
  return rank_transform(y);
}

double adj(const GroupedAnalysis& g, const std::string& row) {
  for (const auto& r : g.rows)
    if (r.name == row) return r.result.adj_r2;
  FAIL("missing row " << row);
  return 0.0;
}

}  // namespace

TEST_CASE("grouped analysis layout") {
  std::mt19937_64 rng(31);
  const auto t = random_table(rng, 400);
  const auto y = response(rng, t, "seed.concreteness", 150.0);
  const auto groups = standard_groups();
  const auto g = grouped_analysis(t, y, groups);
  REQUIRE(g.rows.size() == 7);
  CHECK(g.rows[0].name == "concreteness");
  CHECK(g.rows[1].name == "frequency");
  CHECK(g.rows[2].name == "concreteness+frequency");
  CHECK(g.rows[3].name == "+taxonomic");
  CHECK(g.rows[6].name == "+conceptnet_relations");
  for (std::size_t i = 0; i < 3; ++i) CHECK_FALSE(g.rows[i].delta.has_value());
  for (std::size_t i = 3; i < 7; ++i) {
    REQUIRE(g.rows[i].delta.has_value());
    CHECK(*g.rows[i].delta == g.rows[i].result.adj_r2 - g.rows[2].result.adj_r2);
    // Unadjusted R^2 never drops when a group is added.
    CHECK(g.rows[i].result.r2 >= g.rows[2].result.r2 - 1e-12);
  }
  CHECK(g.rows[3].result.dropped == std::vector<std::string>{"seed.supersense.Tops"});
  CHECK(g.rows[3].result.p == 4 + 51);
  const auto again = grouped_analysis(t, y, groups);
  for (std::size_t i = 0; i < 7; ++i) CHECK(again.rows[i].result.adj_r2 == g.rows[i].result.adj_r2);
}

TEST_CASE("response driven by concreteness only") {
  std::mt19937_64 rng(32);
  const auto t = random_table(rng, 3000);
  const auto y = response(rng, t, "seed.concreteness", 400.0);
  const auto groups = standard_groups();
  const auto g = grouped_analysis(t, y, groups);
  CHECK(adj(g, "concreteness") > 0.5);
  CHECK(std::abs(adj(g, "concreteness") - adj(g, "concreteness+frequency")) < 0.005);
  for (std::size_t i = 3; i < g.rows.size(); ++i) CHECK(std::abs(*g.rows[i].delta) < 0.005);
}

TEST_CASE("planted valence effect tops the VAD features") {
  std::mt19937_64 rng(33);
  const auto t = random_table(rng, 1500);
  const auto y = response(rng, t, "neighbor.valence", 600.0);
  const auto vad = vad_group().features;
  const auto c = single_feature_contributions(t, y, vad, combined_baseline());
  REQUIRE(c.size() == 6);
  const auto best = std::max_element(c.begin(), c.end(), [](auto& a, auto& b) { return a.delta < b.delta; });
  CHECK(best->feature == "neighbor.valence");
  for (const auto& f : c)
    if (f.feature != "neighbor.valence") CHECK(f.delta < best->delta);
}

TEST_CASE("contributions: redundant and constant features") {
  std::mt19937_64 rng(34);
  const auto t = random_table(rng, 300);
  const auto y = response(rng, t, "seed.valence", 100.0);
  const std::vector<std::string> feats{"seed.frequency", "seed.supersense.Tops", "seed.valence"};
  const auto c = single_feature_contributions(t, y, feats, combined_baseline());
  REQUIRE(c.size() == 3);
  CHECK(c[0].delta <= 0.0);  // already in the baseline
  CHECK(c[1].delta == 0.0);
  CHECK(c[1].dropped);
  CHECK(c[2].delta > 0.0);
  CHECK(c[2].adj_r2_with - c[2].adj_r2_without == c[2].delta);
}

TEST_CASE("group ablation mode") {
  std::mt19937_64 rng(35);
  const auto t = random_table(rng, 500);
  const auto y = response(rng, t, "seed.arousal", 120.0);
  const std::vector<std::string> feats{"seed.arousal", "pair.wordnet.synonyms"};
  const auto c = single_feature_contributions(t, y, feats, frequency_baseline(),
                                              ContributionMode::group_ablation);
  REQUIRE(c.size() == 2);
  CHECK(c[0].delta > 0.05);
  CHECK(c[0].adj_r2_with > c[0].adj_r2_without);
  CHECK(parse_contribution_mode(to_string(ContributionMode::group_ablation)) ==
        ContributionMode::group_ablation);
  CHECK_THROWS_AS(parse_contribution_mode("leave_one_in"), ConfigError);
}

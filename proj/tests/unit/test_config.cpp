#include <doctest.h>

#include <nlohmann/json.hpp>

#include "modshift/config.hpp"
#include "modshift/error.hpp"
#include "unit/helpers.hpp"

using namespace modshift;
using nlohmann::json;

namespace {

json fixture_json() { return json::parse(testing::slurp(testing::fixture_dir() / "config.json")); }

RunConfig parse(const json& j) { return parse_config(j, testing::fixture_dir()); }

}  // namespace

TEST_CASE("fixture config parses and validates") {
  const auto cfg = load_config(testing::fixture_dir() / "config.json");
  CHECK_NOTHROW(validate(cfg));
  CHECK(cfg.spaces.size() == 5);
  CHECK(cfg.pair_source == "fasttext");
  CHECK(cfg.space("fasttext").format == EmbeddingFormat::fasttext);
  CHECK(cfg.space("clip_iso").meta.modality == Modality::multimodal);  // from the sidecar
  CHECK(cfg.space("clip_ctx").meta.variant == Variant::ctx_avg);
  CHECK(cfg.lexicon.norms.concreteness_columns.value == 2);
  CHECK(cfg.pairs.k == 40);
  CHECK(cfg.output_dir == testing::fixture_dir() / "run");
  CHECK(cfg.lexicon.wordnet_dir.is_absolute());
  CHECK_THROWS_AS(cfg.space("nope"), ConfigError);
}

TEST_CASE("ratio orientation and anchors") {
  auto j = fixture_json();
  j["comparisons"] = json::array({json{{"a", "clip_iso"}, {"b", "fasttext"}},
                                  json{{"a", "clip_iso"}, {"b", "fasttext"}, {"direction", "as_given"}},
                                  json::array({"fasttext", "mbert_iso"}),
                                  json{{"a", "fasttext"}, {"b", "clip_iso"}, {"anchor", "fasttext"}}});
  const auto r = parse(j).resolved_comparisons();
  REQUIRE(r.size() == 4);
  CHECK(r[0].numerator == "fasttext");  // text over multimodal by default
  CHECK(r[0].denominator == "clip_iso");
  CHECK(r[0].anchor == "clip_iso");
  CHECK(r[0].modality_class == ModalityClass::text_multimodal);
  CHECK(r[1].numerator == "clip_iso");
  CHECK(r[1].label() == "clip_iso/fasttext");
  CHECK(r[2].modality_class == ModalityClass::text_text);
  CHECK(r[2].anchor == "mbert_iso");
  CHECK(r[3].anchor == "fasttext");

  j["comparisons"] = json::array({json{{"a", "fasttext"}, {"b", "clip_iso"}, {"anchor", "xlmr_avg_last"}}});
  CHECK_THROWS_AS(validate(parse(j)), ConfigError);
}

TEST_CASE("validation failures") {
  const auto bad = [](const std::function<void(json&)>& edit) {
    auto j = fixture_json();
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(validate(parse(bad([](json& j) { j["resources"]["conceptnet"] = "missing.csv"; }))),
                  ConfigError);
  CHECK_THROWS_AS(validate(parse(bad([](json& j) { j["comparisons"] = json::array(); }))), ConfigError);
  CHECK_THROWS_AS(validate(parse(bad([](json& j) { j["pair_source"] = "clipx"; }))), ConfigError);
  CHECK_THROWS_AS(validate(parse(bad([](json& j) {
                    j["comparisons"] = json::array({json::array({"fasttext", "fasttext"})});
                  }))),
                  ConfigError);
  CHECK_THROWS_AS(parse(bad([](json& j) { j["pairs"]["k"] = 0; })), ConfigError);
  CHECK_THROWS_AS(parse(bad([](json& j) { j["groups"] = json::array({"syntax"}); })), ConfigError);
  CHECK_THROWS_AS(parse(bad([](json& j) { j["contributions"]["mode"] = "x"; })), ConfigError);
  CHECK_THROWS_AS(parse(bad([](json& j) { j["table_formats"] = json::array({"xlsx"}); })), ConfigError);
  CHECK_THROWS_AS(parse(bad([](json& j) { j["spaces"][0]["variant"] = "mean"; })), ConfigError);
  CHECK_THROWS_AS(parse(bad([](json& j) { j["spaces"][0].erase("path"); })), ConfigError);
  CHECK_THROWS_AS(validate(parse(bad([](json& j) {
                    j["groups"] = json::array({json{{"name", "g"}, {"features", json::array({"seed.hue"})}}});
                  }))),
                  ConfigError);
  CHECK_THROWS_AS(load_config(testing::fixture_dir() / "nope.json"), ConfigError);
}

TEST_CASE("custom groups and contribution settings") {
  auto j = fixture_json();
  j["groups"] = json::array({"vad", json{{"name", "valence_only"}, {"features", {"seed.valence", "neighbor.valence"}}}});
  j["contributions"] = {{"mode", "group_ablation"}, {"baseline", "concreteness+frequency"},
                        {"features", {"seed.valence"}}};
  j["eps"] = 0.0;
  j["bins"] = 20;
  j["table_formats"] = {"md"};
  const auto cfg = parse(j);
  CHECK_NOTHROW(validate(cfg));
  CHECK(cfg.groups.size() == 2);
  CHECK(cfg.groups[1].name == "valence_only");
  CHECK(cfg.contribution_mode == ContributionMode::group_ablation);
  CHECK(cfg.contribution_baseline_kind == ContributionBaseline::combined);
  CHECK(cfg.contribution_features == std::vector<std::string>{"seed.valence"});
  CHECK(cfg.eps == 0.0);
  CHECK(cfg.bins == 20);
  CHECK(cfg.table_formats == std::vector<TableFormat>{TableFormat::md});
  CHECK(contribution_baseline(ContributionBaseline::intercept).features.empty());
}

TEST_CASE("canonical JSON is stable") {
  const auto a = load_config(testing::fixture_dir() / "config.json").to_json().dump();
  const auto b = load_config(testing::fixture_dir() / "config.json").to_json().dump();
  CHECK(a == b);
  CHECK(a.find("\"comparisons\"") != std::string::npos);
}

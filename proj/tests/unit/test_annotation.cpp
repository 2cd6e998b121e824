#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "modshift/annotation.hpp"
#include "modshift/error.hpp"
#include "modshift/ranking.hpp"
#include "unit/helpers.hpp"
#include "unit/lexicon_fixture.hpp"

using namespace modshift;

namespace {

const PairSet& fixture_pairs() {
  static const PairSet pairs = [] {
    const auto& lex = testing::fixture_lexicon();
    const auto src = load_fasttext_text(testing::fixture_dir() / "fasttext.vec");
    return prune_to_complete(build_pairs(src, lex, {40, 4, kDefaultFilterOrder}), lex);
  }();
  return pairs;
}

const AnnotationTable& fixture_table() {
  static const AnnotationTable t = annotate(fixture_pairs(), testing::fixture_lexicon());
  return t;
}

}  // namespace

TEST_CASE("schema: 31 per-word columns per role, 78 overall, 62 word-level") {
  const auto seed = word_feature_names("seed");
  CHECK(seed.size() == 31);
  CHECK(seed.front() == "seed.concreteness");
  CHECK(std::count_if(seed.begin(), seed.end(), [](const std::string& s) {
          return s.rfind("seed.supersense.", 0) == 0;
        }) == 26);
  const auto all = all_feature_names();
  CHECK(all.size() == 78);
  CHECK(std::set<std::string>(all.begin(), all.end()).size() == 78);
  CHECK(word_level_features().size() == 62);
  CHECK(std::find(all.begin(), all.end(), "pair.wordnet.antonyms") != all.end());
  CHECK(std::find(all.begin(), all.end(), "pair.conceptnet.IsA") != all.end());
}

TEST_CASE("standard groups") {
  CHECK(concreteness_baseline().features ==
        std::vector<std::string>{"seed.concreteness", "neighbor.concreteness"});
  CHECK(combined_baseline().features.size() == 4);
  CHECK(taxonomic_group().features.size() == 52);
  CHECK(vad_group().features.size() == 6);
  CHECK(wordnet_relation_group().features.size() == 6);
  CHECK(conceptnet_relation_group().features.size() == 10);
  CHECK(standard_groups().size() == 4);
  CHECK(standard_group("vad").features == vad_group().features);
  CHECK_THROWS_AS(standard_group("syntax"), ConfigError);
  CHECK_THROWS_AS(validate_predictor_set({"x", {}}), ConfigError);
  CHECK_THROWS_AS(validate_predictor_set({"x", {"seed.valence", "seed.valence"}}), ConfigError);
  CHECK_THROWS_AS(validate_predictor_set({"x", {"seed.colour"}}), ConfigError);
  CHECK_NOTHROW(validate_predictor_set({"x", {"seed.valence", "pair.conceptnet.Antonym"}}));
}

TEST_CASE("annotation columns on the fixture") {
  const auto& t = fixture_table();
  const auto& pairs = fixture_pairs();
  const auto& lex = testing::fixture_lexicon();
  REQUIRE(t.rows() == pairs.size());
  CHECK(t.names() == all_feature_names());
  const double n = static_cast<double>(t.rows());

  // Numeric columns are ranks over the pair set.
  for (const char* col : {"seed.concreteness", "neighbor.frequency", "seed.valence",
                          "neighbor.arousal", "seed.dominance"}) {
    const auto c = t.column(col);
    CHECK(std::accumulate(c.begin(), c.end(), 0.0) == doctest::Approx(n * (n + 1) / 2));
    for (double v : c) CHECK((v >= 1.0 && v <= n));
  }
  std::vector<double> raw;
  for (const auto& p : pairs.pairs) raw.push_back(lex.norms.valence.at(p.neighbor));
  const auto expected = rank_transform(raw);
  const auto got = t.column("neighbor.valence");
  CHECK(std::equal(got.begin(), got.end(), expected.begin()));

  // Booleans are 0/1 and agree with the direct queries.
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const auto ss = supersenses(lex.wordnet, pairs.pairs[i].seed);
    for (std::size_t k = 0; k < kSupersenseCount; ++k)
      CHECK(t.column("seed.supersense." + std::string(kSupersenseNames[k]))[i] == (ss.labels[k] ? 1.0 : 0.0));
    const auto wr = wordnet_relations(lex.wordnet, pairs.pairs[i].seed, pairs.pairs[i].neighbor);
    for (std::size_t k = 0; k < kWordNetRelationCount; ++k)
      CHECK(t.column("pair.wordnet." + std::string(kWordNetRelationNames[k]))[i] == (wr[k] ? 1.0 : 0.0));
    const auto cr = conceptnet_relations(lex.conceptnet, pairs.pairs[i].seed, pairs.pairs[i].neighbor);
    for (std::size_t k = 0; k < kConceptNetRelationCount; ++k)
      CHECK(t.column("pair.conceptnet." + std::string(kConceptNetRelationNames[k]))[i] == (cr[k] ? 1.0 : 0.0));
  }
  CHECK_THROWS_AS(t.column("seed.colour"), DataError);
}

TEST_CASE("annotating an incomplete pair is an error") {
  PairSet set;
  set.pairs = {{"qzxv", "vxzq", 0, 1}};
  CHECK_THROWS_AS(annotate(set, testing::fixture_lexicon()), DataError);
}

TEST_CASE("annotation TSV round-trips exactly") {
  testing::TempDir dir;
  write_annotations(fixture_table(), dir / "a.tsv");
  const auto back = read_annotations(dir / "a.tsv");
  CHECK(back.names() == fixture_table().names());
  CHECK(back.seeds() == fixture_table().seeds());
  for (const auto& name : back.names()) {
    const auto a = back.column(name), b = fixture_table().column(name);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
}

#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "acceptance/oracles.hpp"
#include "modshift/error.hpp"
#include "modshift/wordnet.hpp"
#include "unit/helpers.hpp"

using namespace modshift;
using testing::TempDir;
using testing::write;
namespace fs = std::filesystem;

namespace {

const WordNetIndex& real() {
  static const WordNetIndex wn = WordNetIndex::load(testing::test_data() / "wordnet");
  return wn;
}

std::size_t label(std::string_view name) {
  return static_cast<std::size_t>(
      std::find(kSupersenseNames.begin(), kSupersenseNames.end(), name) - kSupersenseNames.begin());
}

bool rel(const WordNetRelations& r, WordNetRelation which) {
  return r[static_cast<std::size_t>(which)];
}

std::vector<std::string> sample_words() {
  std::ifstream in(testing::test_data() / "sample_words.txt");
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Two tiny hand-written databases; offsets are arbitrary ids here.
fs::path tiny_db(const TempDir& dir, const std::string& index, const std::string& data) {
  write(dir / "wn" / "index.noun", index);
  write(dir / "wn" / "data.noun", data);
  return dir / "wn";
}

}  // namespace



TEST_CASE("supersense names cover the 26 noun lexicographer files") {
  CHECK(kSupersenseNames.size() == 26);
  CHECK(kSupersenseNames.front() == "Tops");
  CHECK(kSupersenseNames[label("food")] == "food");
  CHECK(kSupersenseNames.back() == "time");
}

TEST_CASE("a single-sense food word has exactly one label") {
  const auto s = supersenses(real(), "beer");
  CHECK_FALSE(s.missing);
  CHECK(std::count(s.labels.begin(), s.labels.end(), true) == 1);
  CHECK(s.labels[label("food")]);
}

TEST_CASE("polysemous act and artifact senses set both labels") {
  const auto s = supersenses(real(), "road");
  CHECK(s.labels[label("act")]);
  CHECK(s.labels[label("artifact")]);
  CHECK(std::count(s.labels.begin(), s.labels.end(), true) == 2);
}

TEST_CASE("unknown word is all false and marked missing") {
  const auto s = supersenses(real(), "qzxv");
  CHECK(s.missing);
  CHECK(std::none_of(s.labels.begin(), s.labels.end(), [](bool b) { return b; }));
}

TEST_CASE("every noun has at least one supersense") {
  for (const auto& w : sample_words()) {
    const auto s = supersenses(real(), w);
    CHECK_MESSAGE(std::any_of(s.labels.begin(), s.labels.end(), [](bool b) { return b; }), w);
  }
}

TEST_CASE("known relations in WordNet 3.0") {
  const auto& wn = real();
  CHECK(rel(wordnet_relations(wn, "man", "woman"), WordNetRelation::antonyms));
  CHECK(rel(wordnet_relations(wn, "woman", "man"), WordNetRelation::antonyms));
  CHECK(rel(wordnet_relations(wn, "day", "night"), WordNetRelation::antonyms));
  CHECK(rel(wordnet_relations(wn, "country", "nation"), WordNetRelation::synonyms));
  CHECK(rel(wordnet_relations(wn, "kitchen", "room"), WordNetRelation::hypernyms));
  CHECK(rel(wordnet_relations(wn, "room", "kitchen"), WordNetRelation::hyponyms));
  CHECK(rel(wordnet_relations(wn, "boy", "man"), WordNetRelation::same_hypernyms));
  CHECK(rel(wordnet_relations(wn, "boy", "girl"), WordNetRelation::same_hyponyms));
}

TEST_CASE("a word shares a synset with itself") {
  CHECK(rel(wordnet_relations(real(), "city", "city"), WordNetRelation::synonyms));
}

TEST_CASE("unrelated words have no relation") {
  const auto r = wordnet_relations(real(), "coffee", "soldier");
  CHECK(std::none_of(r.begin(), r.end(), [](bool b) { return b; }));
  const auto raw = oracle::RawWordNet::read(testing::test_data() / "wordnet").relations("coffee", "soldier");
  CHECK(std::none_of(raw.begin(), raw.end(), [](bool b) { return b; }));
}

TEST_CASE("siblings found by walking the hypernym graph share a hypernym") {
  const auto& wn = real();
  const SynsetId kitchen = wn.senses("kitchen").front();
  const SynsetId parent = wn.synset(kitchen)->hypernyms.front();
  const Synset* p = wn.synset(parent);
  REQUIRE(p != nullptr);
  bool found = false;
  for (SynsetId child : p->hyponyms) {
    const Synset* c = wn.synset(child);
    if (c == nullptr || child == kitchen) continue;
    const std::string sibling = c->words.front();
    if (!wn.is_noun(sibling)) continue;
    CHECK(rel(wordnet_relations(wn, "kitchen", sibling), WordNetRelation::same_hypernyms));
    found = true;
    break;
  }
  CHECK(found);
}

TEST_CASE("relation symmetry over the sample") {
  const auto words = sample_words();
  const auto& wn = real();
  for (const auto& a : words)
    for (const auto& b : words) {
      const auto ab = wordnet_relations(wn, a, b);
      const auto ba = wordnet_relations(wn, b, a);
      for (auto r : {WordNetRelation::synonyms, WordNetRelation::antonyms,
                     WordNetRelation::same_hypernyms, WordNetRelation::same_hyponyms})
        CHECK(rel(ab, r) == rel(ba, r));
      CHECK(rel(ab, WordNetRelation::hypernyms) == rel(ba, WordNetRelation::hyponyms));
    }
}

TEST_CASE("relations with an unknown word are all false") {
  const auto r = wordnet_relations(real(), "dog", "qzxv");
  CHECK(std::none_of(r.begin(), r.end(), [](bool b) { return b; }));
}

TEST_CASE("base lemma uses exceptions then suffix rules") {
  const auto& wn = real();
  CHECK(wn.base_lemma("children") == "child");
  CHECK(wn.base_lemma("men") == "man");
  CHECK(wn.base_lemma("women") == "woman");
  CHECK(wn.base_lemma("cities") == "city");
  CHECK(wn.base_lemma("buses") == "bus");
  CHECK(wn.base_lemma("dogs") == "dog");
  CHECK(wn.base_lemma("churches") == "church");
  CHECK(wn.base_lemma("dog") == "dog");
  CHECK(wn.base_lemma("qzxvs") == "qzxvs");
}

TEST_CASE("is_noun: WordNet fallback and external list precedence") {
  const auto& wn = real();
  CHECK(is_noun(wn, nullptr, "city"));
  CHECK_FALSE(is_noun(wn, nullptr, "qzxv"));
  const std::unordered_set<std::string> list{"qzxv"};
  CHECK(is_noun(wn, &list, "qzxv"));
  CHECK_FALSE(is_noun(wn, &list, "city"));
}

TEST_CASE("dangling pointers are dropped and counted") {
  TempDir dir;
  const auto wn = WordNetIndex::load(tiny_db(
      dir, "  1 header\nalpha n 1 1 @ 1 0 00000010  \nbeta n 1 1 ~ 1 0 00000020  \n",
      "  1 header\n"
      "00000010 05 n 01 alpha 0 002 @ 00000020 n 0000 @ 00000099 n 0000 | a  \n"
      "00000020 05 n 01 beta 0 001 ~ 00000010 n 0000 | b  \n"));
  CHECK(wn.report().dangling_pointers == 1);
  CHECK(wn.synset(10)->hypernyms == std::vector<SynsetId>{20});
  CHECK(wn.synset(10)->lex_file == 5);
  CHECK(rel(wordnet_relations(wn, "alpha", "beta"), WordNetRelation::hypernyms));
  CHECK(wn.report().exceptions == 0);
}

TEST_CASE("instance hypernyms are not taxonomic links") {
  TempDir dir;
  const auto wn = WordNetIndex::load(tiny_db(
      dir, "paris n 1 1 @i 1 0 00000001  \ncity n 1 1 ~i 1 0 00000002  \n",
      "00000001 15 n 01 Paris 0 001 @i 00000002 n 0000 | x  \n"
      "00000002 15 n 01 city 0 001 ~i 00000001 n 0000 | y  \n"));
  const auto r = wordnet_relations(wn, "paris", "city");
  CHECK_FALSE(rel(r, WordNetRelation::hypernyms));
  CHECK(supersenses(wn, "paris").labels[label("location")]);
}

TEST_CASE("index entry pointing at an unknown synset is an error") {
  TempDir dir;
  CHECK_THROWS_AS(WordNetIndex::load(tiny_db(dir, "alpha n 1 0 1 0 00000077  \n",
                                              "00000010 05 n 01 alpha 0 000 | a  \n")),
                  DataError);
}

TEST_CASE("malformed data files are errors") {
  TempDir a, b, c;
  CHECK_THROWS_AS(WordNetIndex::load(tiny_db(a, "", "00000010 02 n 01 alpha 0 000 | a\n")), DataError);
  CHECK_THROWS_AS(WordNetIndex::load(tiny_db(b, "", "00000010 05 n 01 alpha 0 003 @ 00000010 | a\n")),
                  DataError);
  CHECK_THROWS_AS(WordNetIndex::load(c.path() / "absent"), DataError);
}

TEST_CASE("lexical oracle agreement on the real database sample") {
  const auto raw = oracle::RawWordNet::read(testing::test_data() / "wordnet");
  const auto words = sample_words();
  REQUIRE(words.size() == 100);
  for (const auto& a : words) {
    const auto s = supersenses(real(), a);
    const auto want = raw.supersenses(a);
    CHECK(std::equal(s.labels.begin(), s.labels.end(), want.begin()));
    for (const auto& b : words) {
      const auto r = wordnet_relations(real(), a, b);
      const auto w = raw.relations(a, b);
      CHECK(std::equal(r.begin(), r.end(), w.begin()));
    }
  }
}

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "acceptance/oracles.hpp"
#include "modshift/error.hpp"
#include "modshift/pairs.hpp"
#include "unit/helpers.hpp"
#include "unit/lexicon_fixture.hpp"

using namespace modshift;
using testing::TempDir;

namespace {

const EmbeddingSpace& fixture_source() {
  static const EmbeddingSpace s = load_fasttext_text(testing::fixture_dir() / "fasttext.vec");
  return s;
}

std::vector<double> flat(const EmbeddingSpace& s) {
  std::vector<double> v;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (double x : s.row(i)) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("seed_words takes the first k vocabulary entries") {
  const auto& s = fixture_source();
  CHECK(seed_words(s, 1) == std::vector<std::string>{s.vocab().front()});
  CHECK(seed_words(s, s.size()) == s.vocab());
  CHECK_THROWS_AS(seed_words(s, s.size() + 1), DataError);

  // Independent reading of the file's first lines.
  std::ifstream in(testing::fixture_dir() / "fasttext.vec");
  std::string line;
  std::getline(in, line);
  std::vector<std::string> first;
  for (int i = 0; i < 40 && std::getline(in, line); ++i) first.push_back(line.substr(0, line.find(' ')));
  CHECK(seed_words(s, 40) == first);
}

TEST_CASE("duplicate direction comes first") {
  const EmbeddingSpace s({}, 2, {"q", "far", "same"}, {1, 0, 0, 1, 3, 0});
  CHECK(nearest_neighbors(s, "q", 2) == std::vector<std::string>{"same", "far"});
}

TEST_CASE("ties keep vocabulary order") {
  const EmbeddingSpace s({}, 2, {"b", "q", "a", "c"}, {0, 1, 1, 0, 0, 2, 0, -1});
  CHECK(nearest_neighbors(s, "q", 3) == std::vector<std::string>{"b", "a", "c"});
}

TEST_CASE("full ranking and exhaustive oracle") {
  std::mt19937_64 rng(11);
  const auto s = testing::random_space(rng, 200, 12);
  const auto values = flat(s);
  for (std::size_t q = 0; q < 200; q += 13) {
    for (std::size_t n : {std::size_t{10}, std::size_t{199}}) {
      const auto got = nearest_neighbors(s, s.vocab()[q], n);
      const auto want = oracle::exhaustive_neighbors(values, s.dim(), q, n);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == s.vocab()[want[i]]);
    }
  }
  CHECK_THROWS_AS(nearest_neighbors(s, "missing", 3), DataError);
}

TEST_CASE("raw pair count is k times n") {
  std::mt19937_64 rng(12);
  const auto s = testing::random_space(rng, 60, 5);
  const auto raw = raw_pairs(s, 20, 7);
  CHECK(raw.size() == 140);
  CHECK(raw.provenance.raw == 140);
  CHECK(raw.provenance.duplicates == 0);
  CHECK(raw.pairs[0].seed == s.vocab()[0]);
  CHECK(raw.pairs[0].neighbor_sim_rank == 1);
  CHECK(raw.pairs[6].neighbor_sim_rank == 7);
  CHECK(raw.pairs[7].seed_rank == 1);
  std::set<std::pair<std::string, std::string>> unique;
  for (const auto& p : raw.pairs) unique.emplace(p.seed, p.neighbor);
  CHECK(unique.size() == raw.size());
}

TEST_CASE("filters on the worked examples") {
  const auto lex = testing::real_lexicon({"page", "article", "city"},
                                         std::unordered_set<std::string>{"page", "pages", "article", "city", "cities"});
  const WordPair kept{"page", "article", 0, 1};
  const WordPair plural{"page", "pages", 0, 2};
  const WordPair lemma{"city", "cities", 1, 1};
  for (auto f : kDefaultFilterOrder) CHECK(passes(f, kept, lex));
  CHECK_FALSE(passes(PairFilter::substring, plural, lex));
  CHECK(passes(PairFilter::substring, lemma, lex));
  CHECK_FALSE(passes(PairFilter::lemma, lemma, lex));

  PairSet set;
  set.pairs = {kept, plural, lemma};
  const auto out = apply_filters(set, lex);
  REQUIRE(out.size() == 1);
  CHECK(out.pairs[0] == kept);
  CHECK(out.provenance.dropped_substring == 1);
  CHECK(out.provenance.dropped_lemma == 1);
  CHECK(out.provenance.dropped_noun == 0);
}

TEST_CASE("substring test is case-sensitive") {
  const auto lex = testing::real_lexicon({}, std::unordered_set<std::string>{"Page", "page"});
  CHECK(passes(PairFilter::substring, {"Page", "pagex", 0, 1}, lex));
  CHECK_FALSE(passes(PairFilter::substring, {"xpagex", "page", 0, 1}, lex));
}

TEST_CASE("noun filter applies to both words") {
  const auto lex = testing::real_lexicon({}, std::unordered_set<std::string>{"dog"});
  CHECK_FALSE(passes(PairFilter::noun, {"dog", "quickly", 0, 1}, lex));
  CHECK_FALSE(passes(PairFilter::noun, {"quickly", "dog", 0, 1}, lex));
  CHECK(passes(PairFilter::noun, {"dog", "dog", 0, 1}, lex));
}

TEST_CASE("filters are order-independent on the fixture") {
  const auto& lex = testing::fixture_lexicon();
  const auto raw = raw_pairs(fixture_source(), 40, 4);
  std::array<PairFilter, 3> order = {PairFilter::lemma, PairFilter::noun, PairFilter::substring};
  std::sort(order.begin(), order.end());
  const auto reference = apply_filters(raw, lex).pairs;
  CHECK(reference.size() < raw.size());
  do {
    CHECK(apply_filters(raw, lex, order).pairs == reference);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("built pairs satisfy every invariant") {
  const auto& lex = testing::fixture_lexicon();
  const auto set = build_pairs(fixture_source(), lex, {40, 4, kDefaultFilterOrder});
  CHECK(first_invalid_pair(set, lex) == -1);
  for (const auto& p : set.pairs) {
    CHECK(p.seed != p.neighbor);
    CHECK(p.seed.find(p.neighbor) == std::string::npos);
    CHECK(p.neighbor.find(p.seed) == std::string::npos);
    CHECK(lex.wordnet.base_lemma(p.seed) != lex.wordnet.base_lemma(p.neighbor));
    CHECK(lex.is_noun(p.seed));
    CHECK(lex.is_noun(p.neighbor));
  }
  const auto& pv = set.provenance;
  CHECK(pv.raw == 160);
  CHECK(pv.raw - pv.duplicates - pv.dropped_noun - pv.dropped_substring - pv.dropped_lemma ==
        set.size());
  CHECK(pv.dropped_noun > 0);
  CHECK(pv.dropped_substring > 0);
  CHECK(pv.dropped_lemma > 0);
}

TEST_CASE("first_invalid_pair finds a planted violation") {
  const auto lex = testing::real_lexicon({}, std::unordered_set<std::string>{"dog", "cat", "dogs"});
  PairSet set;
  set.pairs = {{"dog", "cat", 0, 1}, {"cat", "dog", 1, 1}, {"dog", "dogs", 0, 2}};
  CHECK(first_invalid_pair(set, lex) == 2);
  set.pairs.pop_back();
  CHECK(first_invalid_pair(set, lex) == -1);
  set.pairs.push_back(set.pairs.front());
  CHECK(first_invalid_pair(set, lex) == 2);
}

TEST_CASE("prune_to_complete: ten pairs with three gaps") {
  const std::vector<std::string> words = {"dog", "cat", "man", "woman", "boy", "girl", "day",
                                          "night", "war", "peace", "car", "truck", "bus"};
  auto lex = testing::real_lexicon(words);
  lex.norms.valence.erase("truck");      // neighbor lacks a VAD entry
  lex.norms.concreteness.erase("night");
  lex.norms.frequency.erase("bus");
  PairSet set;
  set.pairs = {{"dog", "cat", 0, 1},   {"man", "woman", 1, 1}, {"boy", "girl", 2, 1},
               {"day", "night", 3, 1}, {"war", "peace", 4, 1}, {"car", "truck", 5, 1},
               {"cat", "dog", 6, 1},   {"car", "bus", 5, 2},   {"woman", "girl", 7, 1},
               {"peace", "war", 8, 1}};
  const auto out = prune_to_complete(set, lex);
  CHECK(out.size() == 7);
  CHECK(out.provenance.dropped_incomplete == 3);
  for (const auto& p : out.pairs) {
    CHECK(p.neighbor != "truck");
    CHECK(p.neighbor != "night");
  }
}

TEST_CASE("words unknown to WordNet are pruned even when normed") {
  auto lex = testing::real_lexicon({"dog", "qzxv"});
  PairSet set;
  set.pairs = {{"dog", "qzxv", 0, 1}};
  CHECK(prune_to_complete(set, lex).size() == 0);
}

TEST_CASE("reversed duplicates are kept and counted") {
  const auto lex = testing::real_lexicon({"dog", "cat"});
  PairSet set;
  set.pairs = {{"dog", "cat", 0, 1}, {"cat", "dog", 1, 1}};
  const auto out = prune_to_complete(set, lex);
  CHECK(out.size() == 2);
  CHECK(out.provenance.reversed_duplicates == 1);
}

TEST_CASE("restrict_to_spaces drops pairs outside a space") {
  const EmbeddingSpace a({}, 1, {"dog", "cat", "man"}, {1, 2, 3});
  const EmbeddingSpace b({}, 1, {"dog", "cat"}, {1, 2});
  PairSet set;
  set.pairs = {{"dog", "cat", 0, 1}, {"dog", "man", 0, 2}};
  const EmbeddingSpace* spaces[] = {&a, &b};
  const auto out = restrict_to_spaces(set, spaces);
  CHECK(out.size() == 1);
  CHECK(out.provenance.dropped_coverage == 1);
}

TEST_CASE("pair TSV and provenance round-trip") {
  TempDir dir;
  const auto set = build_pairs(fixture_source(), testing::fixture_lexicon(), {40, 4, kDefaultFilterOrder});
  write_pairs(set, dir / "pairs.tsv");
  CHECK(std::filesystem::exists(dir / "pairs.tsv.json"));
  const auto back = read_pairs(dir / "pairs.tsv");
  CHECK(back.pairs == set.pairs);
  CHECK(back.provenance.raw == set.provenance.raw);
  CHECK(back.provenance.dropped_lemma == set.provenance.dropped_lemma);
  CHECK(back.provenance.source_space == set.provenance.source_space);
  CHECK(testing::slurp(dir / "pairs.tsv").rfind("seed\tneighbor\tseed_rank\tneighbor_sim_rank\n", 0) == 0);
}

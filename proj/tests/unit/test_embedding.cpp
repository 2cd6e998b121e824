#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "modshift/embedding.hpp"
#include "modshift/error.hpp"
#include "modshift/text.hpp"
#include "unit/helpers.hpp"

using namespace modshift;
using testing::TempDir;
using testing::write;

TEST_CASE("fastText text format loads") {
  TempDir dir;
  const auto p = write(dir / "v.vec", "3 2\ncity 0.1 0.2\ndog 1 0 \nman -0.5 2e-1\n");
  const auto s = load_fasttext_text(p, {"ft", Variant::iso, Modality::text});
  CHECK(s.size() == 3);
  CHECK(s.dim() == 2);
  CHECK(s.vocab()[1] == "dog");
  CHECK(s.vector("man")[1] == doctest::Approx(0.2));
  CHECK(s.meta().model_id == "ft");
  CHECK_FALSE(s.contains("cat"));
}

TEST_CASE("fastText row with the wrong width is rejected") {
  TempDir dir;
  const auto p = write(dir / "v.vec", "2 3\ncity 0.1 0.2 0.3\ndog 1 0\n");
  CHECK_THROWS_AS(load_fasttext_text(p), DataError);
}

TEST_CASE("fastText header must match the rows") {
  TempDir dir;
  CHECK_THROWS_AS(load_fasttext_text(write(dir / "a.vec", "3 2\ncity 0.1 0.2\ndog 1 0\n")),
                  DataError);
  CHECK_THROWS_AS(load_fasttext_text(write(dir / "b.vec", "two 2\ncity 0.1 0.2\n")), DataError);
  CHECK_THROWS_AS(load_fasttext_text(write(dir / "c.vec", "")), DataError);
}

TEST_CASE("TSV embeddings load and round-trip bit for bit") {
  TempDir dir;
  std::mt19937_64 rng(3);
  auto space = testing::random_space(rng, 50, 7);
  const EmbeddingSpace src({"m", Variant::ctx_avg, Modality::multimodal}, space.dim(),
                           space.vocab(), [&] {
                             std::vector<double> v;
                             for (std::size_t i = 0; i < space.size(); ++i)
                               for (double x : space.row(i)) v.push_back(x);
                             return v;
                           }());
  write_tsv_embeddings(src, dir / "s.tsv");
  const auto meta = read_sidecar(dir / "s.tsv");
  REQUIRE(meta.has_value());
  CHECK(meta->model_id == "m");
  CHECK(meta->variant == Variant::ctx_avg);
  CHECK(meta->modality == Modality::multimodal);
  const auto back = load_tsv_embeddings(dir / "s.tsv", *meta);
  REQUIRE(back.size() == src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    CHECK(back.vocab()[i] == src.vocab()[i]);
    for (std::size_t d = 0; d < src.dim(); ++d) CHECK(back.row(i)[d] == src.row(i)[d]);
  }

  write_fasttext_text(src, dir / "s.vec");
  const auto ft = load_fasttext_text(dir / "s.vec");
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t d = 0; d < src.dim(); ++d) CHECK(ft.row(i)[d] == src.row(i)[d]);
}

TEST_CASE("missing sidecar yields nullopt") {
  TempDir dir;
  CHECK_FALSE(read_sidecar(write(dir / "a.tsv", "dog\t1\n")).has_value());
}

TEST_CASE("TSV with ragged rows is rejected") {
  TempDir dir;
  CHECK_THROWS_AS(load_tsv_embeddings(write(dir / "a.tsv", "dog\t1\t2\ncat\t1\n"), {}), DataError);
  CHECK_THROWS_AS(load_tsv_embeddings(write(dir / "b.tsv", "dog\t1\tx\n"), {}), DataError);
}

TEST_CASE("EmbeddingSpace invariants") {
  CHECK_THROWS_AS(EmbeddingSpace({}, 2, {"a", "a"}, {1, 0, 0, 1}), DataError);
  CHECK_THROWS_AS(EmbeddingSpace({}, 2, {"a", "b"}, {1, 0, 0, 0}), DataError);
  CHECK_THROWS_AS(EmbeddingSpace({}, 2, {"a", "b"}, {1, 0, 0}), DataError);
  CHECK_THROWS_AS(EmbeddingSpace({}, 2, {"a"}, {1, std::numeric_limits<double>::quiet_NaN()}),
                  DataError);
  CHECK_THROWS_AS(EmbeddingSpace({}, 0, {}, {}), DataError);
  CHECK_THROWS_AS(EmbeddingSpace({}, 1, {""}, {1}), DataError);
  const EmbeddingSpace ok({}, 2, {"a", "b"}, {1, 0, 0, 1});
  CHECK(ok.find("b") == 1);
  CHECK_THROWS_AS(ok.vector("c"), DataError);
}

TEST_CASE("variant and modality names") {
  for (auto v : {Variant::iso, Variant::avg_bottom, Variant::avg_last, Variant::ctx_avg})
    CHECK(parse_variant(to_string(v)) == v);
  CHECK(parse_modality("multimodal") == Modality::multimodal);
  CHECK_THROWS_AS(parse_variant("average"), DataError);
  CHECK_THROWS_AS(parse_modality("audio"), DataError);
}

TEST_CASE("vocab intersection is sorted and exact") {
  const EmbeddingSpace a({}, 1, {"z", "b", "c"}, {1, 1, 1});
  const EmbeddingSpace b({}, 1, {"c", "a", "z"}, {1, 1, 1});
  const EmbeddingSpace* both[] = {&a, &b};
  CHECK(vocab_intersection(both) == std::vector<std::string>{"c", "z"});
}

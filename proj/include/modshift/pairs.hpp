#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "modshift/embedding.hpp"
#include "modshift/lexicon.hpp"

namespace modshift {

struct WordPair {
  std::string seed;
  std::string neighbor;
  std::size_t seed_rank = 0;          // 0-based position of the seed in frequency order
  std::size_t neighbor_sim_rank = 0;  // 1-based position in the seed's neighbor list

  bool operator==(const WordPair&) const = default;
};

/// Stage counts recorded while building a pair set.
struct PairProvenance {
  std::string source_space;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t raw = 0;
  std::size_t duplicates = 0;
  std::size_t dropped_noun = 0;
  std::size_t dropped_substring = 0;
  std::size_t dropped_lemma = 0;
  std::size_t dropped_incomplete = 0;
  std::size_t dropped_coverage = 0;
  std::size_t reversed_duplicates = 0;  // (b, a) kept alongside (a, b)
};

struct PairSet {
  std::vector<WordPair> pairs;
  PairProvenance provenance;

  std::size_t size() const noexcept { return pairs.size(); }
};

/// First `k` words in vocab order. Throws DataError if the vocab is smaller.
std::vector<std::string> seed_words(const EmbeddingSpace& space, std::size_t k);

/// Exact cosine nearest-neighbor scan over a fixed space. Norms are cached,
/// distances are bit-identical to cosine_distance().
class NeighborSearch {
 public:
  explicit NeighborSearch(const EmbeddingSpace& space);

  /// The `n` closest words to vocab row `query` (excluding it), ascending by
  /// distance, ties broken by vocab order.
  std::vector<std::size_t> query(std::size_t row, std::size_t n) const;

 private:
  const EmbeddingSpace& space_;
  std::vector<double> sq_norms_;
};

/// Word-level convenience over NeighborSearch. Throws DataError for unknown
/// words; n is capped at vocab size - 1.
std::vector<std::string> nearest_neighbors(const EmbeddingSpace& space, const std::string& word,
                                           std::size_t n);

enum class PairFilter { noun, substring, lemma };
inline constexpr std::array<PairFilter, 3> kDefaultFilterOrder = {
    PairFilter::noun, PairFilter::substring, PairFilter::lemma};

/// True if the pair survives `filter`.
bool passes(PairFilter filter, const WordPair& pair, const Lexicon& lex);

struct PairBuildConfig {
  std::size_t k = 1000;
  std::size_t n = 100;
  std::array<PairFilter, 3> filter_order = kDefaultFilterOrder;
};

/// (seed, neighbor) for every seed and each of its neighbors, deduplicated.
PairSet raw_pairs(const EmbeddingSpace& space, std::size_t k, std::size_t n);

/// Drops pairs failing the noun, substring or same-lemma tests. Drop counts
/// are attributed to the first failing filter in `order`.
PairSet apply_filters(PairSet pairs, const Lexicon& lex,
                      std::array<PairFilter, 3> order = kDefaultFilterOrder);

PairSet build_pairs(const EmbeddingSpace& space, const Lexicon& lex, const PairBuildConfig& cfg);

/// Keeps pairs whose words both have all norms and at least one noun sense.
PairSet prune_to_complete(PairSet pairs, const Lexicon& lex);

/// Keeps pairs whose words exist in every space.
PairSet restrict_to_spaces(PairSet pairs, std::span<const EmbeddingSpace* const> spaces);

/// Rechecks the per-pair invariants; returns the index of the first
/// violating pair or -1.
long first_invalid_pair(const PairSet& pairs, const Lexicon& lex);

/// TSV (seed, neighbor, seed_rank, neighbor_sim_rank) plus `<path>.json`
/// provenance.
void write_pairs(const PairSet& pairs, const std::filesystem::path& path);
PairSet read_pairs(const std::filesystem::path& path);

}  // namespace modshift

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modshift {

/// How a word-type vector was extracted from its model.
enum class Variant { iso, avg_bottom, avg_last, ctx_avg };
enum class Modality { text, multimodal };

std::string_view to_string(Variant v);
std::string_view to_string(Modality m);
Variant parse_variant(std::string_view s);    // throws DataError
Modality parse_modality(std::string_view s);  // throws DataError

struct EmbeddingMeta {
  std::string model_id = "unknown";
  Variant variant = Variant::iso;
  Modality modality = Modality::text;
};

/// Immutable vocabulary-indexed matrix of word vectors.
///
/// Rows keep file order; for fastText files that order doubles as the
/// frequency order. Construction validates every invariant (unique nonempty
/// words, finite components, no zero rows), so a live object is always valid.
class EmbeddingSpace {
 public:
  EmbeddingSpace(EmbeddingMeta meta, std::size_t dim, std::vector<std::string> vocab,
                 std::vector<double> values);

  const EmbeddingMeta& meta() const noexcept { return meta_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vocab_.size(); }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  std::optional<std::size_t> find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word).has_value(); }

  /// Row by word; throws DataError for unknown words.
  std::span<const double> vector(std::string_view word) const;

 private:
  EmbeddingMeta meta_;
  std::size_t dim_;
  std::vector<std::string> vocab_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Reads "<count> <dim>" followed by "<word> v1 ... vd" rows.
EmbeddingSpace load_fasttext_text(const std::filesystem::path& path, EmbeddingMeta meta = {});

/// Reads "<word>\tv1\t...\tvd" rows.
EmbeddingSpace load_tsv_embeddings(const std::filesystem::path& path, EmbeddingMeta meta);

/// Reads `<path>.json` ({"model_id", "variant", "modality"}) if it exists.
std::optional<EmbeddingMeta> read_sidecar(const std::filesystem::path& path);

/// Writes the TSV format with round-trip exact decimals, plus the sidecar.
void write_tsv_embeddings(const EmbeddingSpace& space, const std::filesystem::path& path,
                          bool with_sidecar = true);
void write_fasttext_text(const EmbeddingSpace& space, const std::filesystem::path& path);

/// Words present in every space, sorted lexicographically.
std::vector<std::string> vocab_intersection(std::span<const EmbeddingSpace* const> spaces);

}  // namespace modshift

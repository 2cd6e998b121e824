#include "modshift/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "modshift/error.hpp"
#include "modshift/text.hpp"

namespace modshift {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::iso: return "iso";
    case Variant::avg_bottom: return "avg_bottom";
    case Variant::avg_last: return "avg_last";
    case Variant::ctx_avg: return "ctx_avg";
  }
  return "iso";
}

std::string_view to_string(Modality m) {
  return m == Modality::text ? "text" : "multimodal";
}

Variant parse_variant(std::string_view s) {
  if (s == "iso") return Variant::iso;
  if (s == "avg_bottom" || s == "avg-bottom") return Variant::avg_bottom;
  if (s == "avg_last" || s == "avg-last") return Variant::avg_last;
  if (s == "ctx_avg" || s == "ctx-avg") return Variant::ctx_avg;
  throw DataError("unknown embedding variant: " + std::string(s));
}

Modality parse_modality(std::string_view s) {
  if (s == "text") return Modality::text;
  if (s == "multimodal") return Modality::multimodal;
  throw DataError("unknown modality: " + std::string(s));
}

EmbeddingSpace::EmbeddingSpace(EmbeddingMeta meta, std::size_t dim,
                               std::vector<std::string> vocab, std::vector<double> values)
    : meta_(std::move(meta)), dim_(dim), vocab_(std::move(vocab)), values_(std::move(values)) {
  if (vocab_.empty()) throw DataError("empty space");
  if (dim_ == 0) throw DataError("embedding dimension must be positive");
  if (values_.size() != vocab_.size() * dim_)
    throw DataError("value count does not match vocab size x dim");
  index_.reserve(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    const auto& w = vocab_[i];
    if (w.empty()) throw DataError("empty word at row " + std::to_string(i));
    if (!index_.emplace(w, i).second) throw DataError("duplicate word: " + w);
    bool nonzero = false;
    for (double x : row(i)) {
      if (!std::isfinite(x)) throw DataError("non-finite value for word: " + w);
      nonzero = nonzero || x != 0.0;
    }
    if (!nonzero) throw DataError("zero vector for word: " + w);
  }
}

std::optional<std::size_t> EmbeddingSpace::find(std::string_view word) const {
  // Heterogeneous lookup on unordered_map needs C++20 transparent hashing,
  // which libstdc++ 11 lacks.
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const double> EmbeddingSpace::vector(std::string_view word) const {
  const auto i = find(word);
  if (!i) throw DataError("word not in space '" + meta_.model_id + "': " + std::string(word));
  return row(*i);
}

namespace {

void parse_row(const std::filesystem::path& path, std::size_t line_no,
               const std::vector<std::string_view>& fields, std::size_t dim,
               std::vector<std::string>& vocab, std::vector<double>& values) {
  const auto where = [&] { return path.string() + ":" + std::to_string(line_no); };
  if (fields.empty() || fields[0].empty()) throw DataError(where() + ": missing word");
  if (fields.size() != dim + 1)
    throw DataError(where() + ": row width mismatch (expected " + std::to_string(dim) +
                    " values, got " + std::to_string(fields.size() - 1) + ")");
  vocab.emplace_back(fields[0]);
  for (std::size_t j = 1; j < fields.size(); ++j) {
    const auto v = text::parse_double(fields[j]);
    if (!v) throw DataError(where() + ": malformed number '" + std::string(fields[j]) + "'");
    if (!std::isfinite(*v)) throw DataError(where() + ": non-finite value");
    values.push_back(*v);
  }
}

EmbeddingSpace build(const std::filesystem::path& path, EmbeddingMeta meta, std::size_t dim,
                     std::vector<std::string> vocab, std::vector<double> values) {
  try {
    return EmbeddingSpace(std::move(meta), dim, std::move(vocab), std::move(values));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace

EmbeddingSpace load_fasttext_text(const std::filesystem::path& path, EmbeddingMeta meta) {
  const std::string content = text::read_file(path);
  const auto rows = text::lines(content);
  if (rows.empty()) throw DataError(path.string() + ": empty space");

  const auto header = text::split(text::trim(rows[0]), ' ');
  if (header.size() != 2) throw DataError(path.string() + ": malformed header");
  const auto count = text::parse_int(header[0]);
  const auto dim = text::parse_int(header[1]);
  if (!count || !dim || *count <= 0 || *dim <= 0)
    throw DataError(path.string() + ": malformed header");

  std::vector<std::string> vocab;
  std::vector<double> values;
  vocab.reserve(static_cast<std::size_t>(*count));
  values.reserve(static_cast<std::size_t>(*count * *dim));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    // Published .vec files end each row with a trailing space.
    const auto row = text::trim(rows[i]);
    if (row.empty()) continue;
    parse_row(path, i + 1, text::split(row, ' '), static_cast<std::size_t>(*dim), vocab,
              values);
  }
  if (vocab.size() != static_cast<std::size_t>(*count))
    throw DataError(path.string() + ": header declares " + std::to_string(*count) +
                    " rows, found " + std::to_string(vocab.size()));
  return build(path, std::move(meta), static_cast<std::size_t>(*dim), std::move(vocab),
               std::move(values));
}

EmbeddingSpace load_tsv_embeddings(const std::filesystem::path& path, EmbeddingMeta meta) {
  const std::string content = text::read_file(path);
  std::vector<std::string> vocab;
  std::vector<double> values;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  for (const auto row : text::lines(content)) {
    ++line_no;
    if (row.empty()) continue;
    const auto fields = text::split(row, '\t');
    if (dim == 0) {
      if (fields.size() < 2) throw DataError(path.string() + ": row has no values");
      dim = fields.size() - 1;
    }
    parse_row(path, line_no, fields, dim, vocab, values);
  }
  if (vocab.empty()) throw DataError(path.string() + ": empty space");
  return build(path, std::move(meta), dim, std::move(vocab), std::move(values));
}

std::optional<EmbeddingMeta> read_sidecar(const std::filesystem::path& path) {
  auto sidecar = path;
  sidecar += ".json";
  if (!std::filesystem::exists(sidecar)) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(text::read_file(sidecar));
    EmbeddingMeta meta;
    meta.model_id = j.value("model_id", meta.model_id);
    if (j.contains("variant")) meta.variant = parse_variant(j.at("variant").get<std::string>());
    if (j.contains("modality"))
      meta.modality = parse_modality(j.at("modality").get<std::string>());
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(sidecar.string() + ": " + e.what());
  }
}

void write_tsv_embeddings(const EmbeddingSpace& space, const std::filesystem::path& path,
                          bool with_sidecar) {
  std::string out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    out += space.vocab()[i];
    for (double x : space.row(i)) {
      out += '\t';
      out += text::format_double(x);
    }
    out += '\n';
  }
  text::write_file_atomic(path, out);
  if (with_sidecar) {
    nlohmann::ordered_json j;
    j["model_id"] = space.meta().model_id;
    j["variant"] = to_string(space.meta().variant);
    j["modality"] = to_string(space.meta().modality);
    auto sidecar = path;
    sidecar += ".json";
    text::write_file_atomic(sidecar, j.dump(2) + "\n");
  }
}

void write_fasttext_text(const EmbeddingSpace& space, const std::filesystem::path& path) {
  std::string out = std::to_string(space.size()) + " " + std::to_string(space.dim()) + "\n";
  for (std::size_t i = 0; i < space.size(); ++i) {
    out += space.vocab()[i];
    for (double x : space.row(i)) {
      out += ' ';
      out += text::format_double(x);
    }
    out += '\n';
  }
  text::write_file_atomic(path, out);
}

std::vector<std::string> vocab_intersection(std::span<const EmbeddingSpace* const> spaces) {
  if (spaces.empty()) return {};
  std::vector<std::string> result = spaces[0]->vocab();
  std::sort(result.begin(), result.end());
  for (std::size_t s = 1; s < spaces.size(); ++s) {
    std::erase_if(result, [&](const std::string& w) { return !spaces[s]->contains(w); });
  }
  return result;
}

}  // namespace modshift

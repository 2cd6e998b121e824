#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "modshift/lexicon.hpp"
#include "modshift/pairs.hpp"

namespace modshift {

/// Column-major table of regression-ready pair annotations.
///
/// Column names follow "<role>.<parameter>" for per-word values (role is
/// "seed" or "neighbor") and "pair.<resource>.<relation>" for relational
/// booleans:
///   seed.concreteness  seed.frequency  seed.valence  seed.arousal
///   seed.dominance  seed.supersense.<lexname>  (x26)
///   pair.wordnet.<relation>  (x6)   pair.conceptnet.<Relation>  (x10)
/// Numeric columns hold tie-averaged ranks over the pair set; booleans are 0/1.
class AnnotationTable {
 public:
  AnnotationTable() = default;
  AnnotationTable(std::vector<std::string> seeds, std::vector<std::string> neighbors);

  std::size_t rows() const noexcept { return seeds_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::string>& seeds() const noexcept { return seeds_; }
  const std::vector<std::string>& neighbors() const noexcept { return neighbors_; }

  bool has(const std::string& name) const { return index_.contains(name); }
  /// Throws DataError for unknown selectors.
  std::span<const double> column(const std::string& name) const;

  void add_column(std::string name, std::vector<double> values);

 private:
  std::vector<std::string> seeds_;
  std::vector<std::string> neighbors_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// "<role>.<parameter>" names of the 31 per-word annotations for one role.
std::vector<std::string> word_feature_names(const std::string& role);
/// All 78 annotation columns in canonical order.
std::vector<std::string> all_feature_names();
/// The 62 per-word columns (30 semantic parameters plus frequency, per word).
std::vector<std::string> word_level_features();

/// Builds the full table. Every pair word must have complete norms and a
/// WordNet entry (run prune_to_complete first); throws DataError otherwise.
AnnotationTable annotate(const PairSet& pairs, const Lexicon& lex);

void write_annotations(const AnnotationTable& table, const std::filesystem::path& path);
AnnotationTable read_annotations(const std::filesystem::path& path);

/// A named list of annotation columns entering a regression together.
struct PredictorSet {
  std::string name;
  std::vector<std::string> features;
};

PredictorSet concreteness_baseline();
PredictorSet frequency_baseline();
/// concreteness then frequency, both words each.
PredictorSet combined_baseline();

PredictorSet taxonomic_group();
PredictorSet vad_group();
PredictorSet wordnet_relation_group();
PredictorSet conceptnet_relation_group();

/// taxonomic, VAD, WordNet relations, ConceptNet relations.
std::vector<PredictorSet> standard_groups();

/// Resolves "taxonomic" | "vad" | "wordnet_relations" | "conceptnet_relations";
/// throws ConfigError otherwise.
PredictorSet standard_group(const std::string& name);

/// Throws ConfigError for empty sets, duplicates or unknown selectors.
void validate_predictor_set(const PredictorSet& set);

}  // namespace modshift

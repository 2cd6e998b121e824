#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "modshift/embedding.hpp"

namespace modshift::synthetic {

/// Deterministic across platforms: mt19937_64 bits mapped by hand rather
/// than through the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();                      // [0, 1)
  double normal();                       // N(0, 1), Box-Muller
  std::size_t below(std::size_t bound);  // [0, bound)
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct SpaceSpec {
  std::string id;
  Modality modality = Modality::text;
  Variant variant = Variant::iso;
  bool fasttext_format = false;
  /// Satellite offsets grow with the seed's concreteness rank.
  bool planted = false;
};

/// A world of `clusters` seed words, each with `satellites` close
/// neighbors in the source (first) space, plus matching lexical resources.
struct WorldSpec {
  std::size_t clusters = 40;
  std::size_t satellites = 4;
  std::size_t dim = 16;
  std::uint64_t seed = 7;
  double radius = 0.3;          // satellite offset in unplanted spaces
  double stretch = 1.5;         // log-range of the planted stretch
  double noise = 0.15;          // log-normal noise on every offset
  bool permute_concreteness = false;  // shuffle concreteness in the written norms
  double non_noun_rate = 0.0;   // satellites absent from WordNet and the noun list
  double plural_rate = 0.0;     // satellites that are seed + "s"
  double lemma_rate = 0.0;      // y/ies inflection pairs
  double missing_norm_rate = 0.0;  // satellites without VAD scores
  std::vector<SpaceSpec> spaces;
  std::vector<std::pair<std::string, std::string>> comparisons;
};

/// The bundled 200-word fixture: five spaces, all filter paths exercised.
WorldSpec fixture_spec();
/// Two 2,000-word spaces with concreteness planted in the multimodal one.
WorldSpec planted_spec(bool permute_concreteness);

/// Writes spaces, WordNet files, ConceptNet dump, norms, noun list and a
/// config.json (relative paths, output_dir "run") into `dir`.
/// Returns the config path.
std::filesystem::path write_world(const WorldSpec& spec, const std::filesystem::path& dir);

}  // namespace modshift::synthetic

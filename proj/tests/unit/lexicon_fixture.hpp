#pragma once

#include "modshift/config.hpp"
#include "modshift/lexicon.hpp"
#include "unit/helpers.hpp"

namespace testing {

/// The bundled fixture's configuration and lexical resources, loaded once.
inline const modshift::RunConfig& fixture_config() {
  static const modshift::RunConfig cfg = modshift::load_config(fixture_dir() / "config.json");
  return cfg;
}

inline const modshift::Lexicon& fixture_lexicon() {
  static const modshift::Lexicon lex = modshift::load_lexicon(fixture_config().lexicon);
  return lex;
}

/// Real WordNet slice plus hand-filled norms for the given words.
inline modshift::Lexicon real_lexicon(const std::vector<std::string>& normed,
                                      std::optional<std::unordered_set<std::string>> nouns = {}) {
  modshift::Lexicon lex{modshift::WordNetIndex::load(test_data() / "wordnet"), {}, {}, std::move(nouns)};
  double v = 0.1;
  for (const auto& w : normed) {
    lex.norms.concreteness[w] = 1.0 + 4.0 * v;
    lex.norms.valence[w] = v;
    lex.norms.arousal[w] = 1.0 - v;
    lex.norms.dominance[w] = v / 2;
    lex.norms.frequency[w] = 100.0 * v;
    v = v < 0.9 ? v + 0.07 : 0.05;
  }
  return lex;
}

}  // namespace testing

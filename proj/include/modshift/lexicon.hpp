#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_set>

#include "modshift/conceptnet.hpp"
#include "modshift/norms.hpp"
#include "modshift/wordnet.hpp"

namespace modshift {

struct LexiconPaths {
  std::filesystem::path wordnet_dir;
  std::filesystem::path conceptnet;
  std::string conceptnet_lang = "en";
  NormsPaths norms;
  std::optional<std::filesystem::path> noun_list;
};

/// Every lexical resource the pair builder and annotator consult.
struct Lexicon {
  WordNetIndex wordnet;
  ConceptNetIndex conceptnet;
  WordNorms norms;
  std::optional<std::unordered_set<std::string>> noun_list;

  const std::unordered_set<std::string>* nouns() const {
    return noun_list ? &*noun_list : nullptr;
  }
  bool is_noun(const std::string& word) const {
    return modshift::is_noun(wordnet, nouns(), word);
  }
};

Lexicon load_lexicon(const LexiconPaths& paths);

}  // namespace modshift

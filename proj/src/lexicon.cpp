#include "modshift/lexicon.hpp"

namespace modshift {

Lexicon load_lexicon(const LexiconPaths& paths) {
  Lexicon lex{WordNetIndex::load(paths.wordnet_dir),
              ConceptNetIndex::load(paths.conceptnet, paths.conceptnet_lang),
              load_norms(paths.norms), std::nullopt};
  if (paths.noun_list) lex.noun_list = load_word_list(*paths.noun_list);
  return lex;
}

}  // namespace modshift

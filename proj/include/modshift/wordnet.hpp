#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace modshift {

/// The 26 noun lexicographer files, in file-number order (03 .. 28).
inline constexpr std::size_t kSupersenseCount = 26;
inline constexpr int kFirstNounLexFile = 3;
extern const std::array<std::string_view, kSupersenseCount> kSupersenseNames;  // "Tops", "act", ...

using SynsetId = std::uint32_t;  // data.noun byte offset

struct LexicalPointer {
  SynsetId target = 0;
  std::uint8_t source_word = 0;  // 1-based; 0 means the whole synset
  std::uint8_t target_word = 0;
};

struct Synset {
  SynsetId id = 0;
  int lex_file = 0;  // 3 .. 28
  std::vector<std::string> words;  // as written in data.noun
  std::vector<SynsetId> hypernyms;  // direct '@'
  std::vector<SynsetId> hyponyms;   // direct '~'
  std::vector<LexicalPointer> antonyms;  // '!'
};

struct WordNetLoadReport {
  std::size_t index_entries = 0;
  std::size_t synsets = 0;
  std::size_t dangling_pointers = 0;  // pointers to synsets absent from data.noun
  std::size_t exceptions = 0;
};

/// In-memory view of the noun part of a Princeton WordNet 3.x database
/// (index.noun, data.noun, and optionally noun.exc).
class WordNetIndex {
 public:
  static WordNetIndex load(const std::filesystem::path& dir);

  bool is_noun(const std::string& word) const { return senses_.contains(word); }
  /// Noun synsets of `word` in sense order; empty if unknown.
  const std::vector<SynsetId>& senses(const std::string& word) const;
  const Synset* synset(SynsetId id) const;

  /// Base noun lemma by WordNet morphology: the exception list first, then
  /// the word itself if it is a noun, then the first detachment rule that
  /// yields a noun; otherwise the word unchanged.
  std::string base_lemma(const std::string& word) const;

  const WordNetLoadReport& report() const noexcept { return report_; }

 private:
  std::unordered_map<std::string, std::vector<SynsetId>> senses_;
  std::unordered_map<SynsetId, Synset> synsets_;
  std::unordered_map<std::string, std::vector<std::string>> exceptions_;
  WordNetLoadReport report_;
};

struct SupersenseVector {
  std::array<bool, kSupersenseCount> labels{};
  bool missing = true;  // word unknown to WordNet
};

/// Label i is set iff any noun sense of `word` lives in lexicographer file i.
SupersenseVector supersenses(const WordNetIndex& index, const std::string& word);

enum class WordNetRelation : std::size_t {
  antonyms,
  synonyms,
  same_hyponyms,
  same_hypernyms,
  hyponyms,
  hypernyms,
};
inline constexpr std::size_t kWordNetRelationCount = 6;
extern const std::array<std::string_view, kWordNetRelationCount> kWordNetRelationNames;

using WordNetRelations = std::array<bool, kWordNetRelationCount>;

/// Relations between the noun senses of w1 and w2.
/// hypernyms: some synset of w2 is a direct hypernym of some synset of w1;
/// hyponyms is the inverse. All false when either word is unknown.
WordNetRelations wordnet_relations(const WordNetIndex& index, const std::string& w1,
                                   const std::string& w2);

/// External noun list wins when given; otherwise WordNet noun membership.
bool is_noun(const WordNetIndex& index, const std::unordered_set<std::string>* noun_list,
             const std::string& word);

/// One word per line; blank lines ignored.
std::unordered_set<std::string> load_word_list(const std::filesystem::path& path);

}  // namespace modshift
